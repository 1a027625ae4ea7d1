from itertools import combinations

import networkx as nx
from django.test import SimpleTestCase, override_settings
from hypothesis import given

from src.core import samples
from src.core.exceptions import NotRooted, SearchBudgetExceeded
from src.core.semantics import enumerate_rooted_paths, step_graph
from src.core.strategies import (
    QUICK_SETTINGS,
    config_families,
    rooted_connected_structures,
    st_structures,
)
from src.core.structures import EMPTY, STConfig, structure
from src.equivalences.bisimulation import (
    config_hh_bisimilar,
    st_h_bisimilar,
    st_hh_bisimilar,
)
from src.equivalences.graphs import oracle_rooted_path_count, oracle_step_graph
from src.equivalences.isomorphism import (
    EventBijection,
    compose,
    is_st_morphism,
    st_isomorphic,
)
from src.related.structures import config_properties, config_structure, subsets
from src.related.translations import cintost2


def C(started="", terminated=""):
    return STConfig.of(started, terminated)


def small_structures():
    for events in ([], ["a"], ["a", "b"]):
        yield from rooted_connected_structures(events)


def components(*groups):
    """Filled-in ST-structure of disjoint components; each group lists events and conflicts."""

    configs = []
    labels = {}
    for events, conflicts in groups:
        labels.update({event: event[0] for event in events})
        for subset in subsets(events):
            if not any(set(pair) <= subset for pair in conflicts):
                configs.append(subset)
    return cintost2(config_structure(configs, labels))


class IsomorphismTests(SimpleTestCase):
    def test_renamed_square_is_isomorphic(self):
        filled = samples.filled_square()
        bijection = st_isomorphic(filled, filled.rename({"a": "b", "b": "a"}))
        self.assertIsNotNone(bijection)
        self.assertEqual(len(bijection), 2)

    def test_renaming_respects_labels(self):
        filled = samples.filled_square()
        renamed = structure(
            [C(), C("x"), C("y"), C("xy"), C("x", "x"), C("y", "y"), C("xy", "x"),
             C("xy", "y"), C("xy", "xy")],
            {"x": "a", "y": "b"},
        )
        self.assertEqual(st_isomorphic(filled, renamed), EventBijection((("a", "x"), ("b", "y"))))

    def test_asymmetric_conflicts_are_not_isomorphic(self):
        self.assertIsNone(
            st_isomorphic(samples.asymmetric_conflict(), samples.asymmetric_conflict_three())
        )

    def test_squares_are_not_isomorphic(self):
        self.assertIsNone(st_isomorphic(samples.filled_square(), samples.empty_square()))

    def test_label_mismatch_blocks_isomorphism(self):
        self.assertIsNone(st_isomorphic(samples.single_event("a"), samples.single_event("b")))

    def test_bijection_helpers(self):
        bijection = EventBijection.from_mapping({"a": "x", "b": "y"})
        self.assertEqual(bijection.inverse.mapping, {"x": "a", "y": "b"})
        self.assertEqual(bijection.restrict(frozenset("a")).mapping, {"a": "x"})
        self.assertEqual(str(bijection), "{a->x, b->y}")
        with self.assertRaises(ValueError):
            EventBijection.from_mapping({"a": "x", "b": "x"})

    def test_morphisms(self):
        chain = samples.chain()
        self.assertTrue(is_st_morphism({"a": "a", "b": "b"}, chain, chain))
        self.assertTrue(is_st_morphism({"a": "a"}, chain, samples.filled_square()))
        self.assertFalse(is_st_morphism({"a": "b"}, chain, samples.filled_square()))
        self.assertTrue(is_st_morphism({}, chain, samples.single_event()))

    def test_composition(self):
        self.assertEqual(compose({"a": "x", "b": "y"}, {"x": "p"}), {"a": "p"})

    @given(st_structures(max_events=3))
    @QUICK_SETTINGS
    def test_isomorphic_samples_are_hh_bisimilar(self, st):
        renaming = {event: event.upper() for event in st.events}
        renamed = st.rename(renaming)
        self.assertIsNotNone(st_isomorphic(st, renamed))
        self.assertTrue(st_hh_bisimilar(st, renamed))


class BisimulationTests(SimpleTestCase):
    def test_squares_are_not_bisimilar(self):
        for decide in (st_h_bisimilar, st_hh_bisimilar):
            result = decide(samples.filled_square(), samples.empty_square())
            self.assertFalse(result)
            self.assertEqual(result.distinguishing, ("left s:a", "left s:b"))

    def test_asymmetric_conflicts_are_hh_bisimilar(self):
        result = st_hh_bisimilar(samples.asymmetric_conflict(), samples.asymmetric_conflict_three())
        self.assertTrue(result)
        self.assertEqual(result.mode, "hh")
        self.assertEqual(result.as_json()["distinguishing"], [])

    def test_structures_are_bisimilar_to_themselves(self):
        for name, build in sorted(samples.SAMPLES.items()):
            with self.subTest(name=name):
                st = build()
                result = st_hh_bisimilar(st, st)
                self.assertTrue(result)
                identity = {event: event for event in st.events}
                for config in st.sorted_configs():
                    self.assertTrue(
                        any(
                            triple.left == config
                            and triple.right == config
                            and triple.iso.mapping == {e: identity[e] for e in config.started}
                            for triple in result.relation
                        )
                    )

    def test_symmetry_on_samples(self):
        built = {name: build() for name, build in samples.SAMPLES.items()}
        for left, right in combinations(sorted(built), 2):
            with self.subTest(left=left, right=right):
                self.assertEqual(
                    bool(st_hh_bisimilar(built[left], built[right])),
                    bool(st_hh_bisimilar(built[right], built[left])),
                )

    def test_transitivity_spot_check(self):
        first = samples.asymmetric_conflict()
        second = samples.asymmetric_conflict_three()
        third = first.rename({"b": "x", "s": "y"})
        self.assertTrue(st_hh_bisimilar(first, second))
        self.assertTrue(st_hh_bisimilar(second, third))
        self.assertTrue(st_hh_bisimilar(first, third))

    def test_h_does_not_imply_hh(self):
        three = components(
            (["a1", "b1", "c1"], [("b1", "c1")]),
            (["a2", "b2", "c2"], [("a2", "c2")]),
            (["a3", "b3"], []),
        )
        two = components(
            (["a1", "b1", "c1"], [("b1", "c1")]),
            (["a2", "b2", "c2"], [("a2", "c2")]),
        )
        self.assertTrue(st_h_bisimilar(three, two))
        self.assertFalse(st_hh_bisimilar(three, two))

    def test_unrooted_input(self):
        with self.assertRaises(NotRooted):
            st_hh_bisimilar(samples.chain(), structure([C("a", "a")]))

    @override_settings(TRUECC_BUDGET=3)
    def test_budget(self):
        with self.assertRaises(SearchBudgetExceeded):
            st_hh_bisimilar(samples.filled_square(), samples.filled_square())

    def test_isomorphism_implies_hh_exhaustively(self):
        small = list(small_structures())
        for left in small:
            for right in small:
                if st_isomorphic(left, right) is not None:
                    self.assertTrue(st_hh_bisimilar(left, right))

    def test_hh_implies_h_exhaustively(self):
        small = [st for st in small_structures() if len(st.events) == 2]
        for left, right in combinations(small, 2):
            if st_hh_bisimilar(left, right):
                self.assertTrue(st_h_bisimilar(left, right))

    def test_configuration_hh_matches_filled_translation(self):
        # experimental: checked on stable families over two events only
        stable = [
            config_structure(family, events=["a", "b"])
            for family in config_families(["a", "b"])
            if config_properties(config_structure(family, events=["a", "b"])).stable
        ]
        self.assertTrue(stable)
        for left in stable:
            for right in stable:
                self.assertEqual(
                    bool(config_hh_bisimilar(left, right)),
                    bool(st_hh_bisimilar(cintost2(left), cintost2(right))),
                )


class OracleTests(SimpleTestCase):
    def test_counts(self):
        self.assertEqual(oracle_step_graph(samples.filled_square()).number_of_edges(), 12)
        self.assertEqual(oracle_step_graph(samples.filled_square()).number_of_nodes(), 9)
        empty = oracle_step_graph(samples.empty_square())
        self.assertEqual((empty.number_of_nodes(), empty.number_of_edges()), (8, 8))
        trivial = oracle_step_graph(structure([EMPTY]))
        self.assertEqual((trivial.number_of_nodes(), trivial.number_of_edges()), (1, 0))

    def test_step_graph_agrees_with_oracle(self):
        for st in small_structures():
            expected = oracle_step_graph(st)
            actual = step_graph(st)
            self.assertEqual(set(actual.nodes), set(expected.nodes))
            self.assertEqual(
                {(u, v, data["kind"], data["event"]) for u, v, data in actual.edges(data=True)},
                {(u, v, data["kind"], data["event"]) for u, v, data in expected.edges(data=True)},
            )

    def test_path_counts_agree_with_oracle(self):
        for st in small_structures():
            for config in st.sorted_configs():
                self.assertEqual(
                    len(enumerate_rooted_paths(st, config)),
                    oracle_rooted_path_count(st, config),
                )

    @given(st_structures(max_events=3))
    @QUICK_SETTINGS
    def test_oracle_graph_is_acyclic(self, st):
        self.assertTrue(nx.is_directed_acyclic_graph(oracle_step_graph(st)))
