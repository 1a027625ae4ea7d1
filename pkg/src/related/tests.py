from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import strategies as hst

from src.core import samples
from src.core.exceptions import NotStableInput, PreconditionViolated
from src.core.models import PropertyFlag
from src.core.properties import (
    closed_under_bounded_intersections,
    closed_under_bounded_unions,
    is_adjacent_closed,
    is_rooted,
    is_stable,
)
from src.core.semantics import steps_from
from src.core.strategies import (
    QUICK_SETTINGS,
    SLOW_SETTINGS,
    config_families,
    exhaustive_structures,
    filled_structures,
    rooted_connected_structures,
    set_families,
)
from src.core.structures import EMPTY, STConfig, structure
from src.equivalences.isomorphism import compose, is_st_morphism, st_isomorphic
from src.related import samples as related_samples
from src.related.structures import (
    AsyncStep,
    config_properties,
    config_structure,
    event_structure,
    subsets,
)
from src.related.structures import async_steps_config, async_steps_event, left_closed_configs
from src.related.translations import (
    cintost,
    cintost2,
    cintost3,
    config_morphism_check,
    eintost,
    map_st,
    require_translatable,
    stintoc,
    stintoe,
)


def C(started="", terminated=""):
    return STConfig.of(started, terminated)


def F(*configs):
    return frozenset(frozenset(config) for config in configs)


@hst.composite
def event_structures(draw, max_events=3):
    events = ["a", "b", "c"][: draw(hst.integers(min_value=1, max_value=max_events))]
    sets = subsets(events)
    pair = hst.tuples(hst.sampled_from(sets), hst.sampled_from(sets))
    pairs = draw(hst.sets(pair, max_size=12))
    return event_structure({(frozenset(), frozenset())} | pairs, events=events)


class AsyncStepTests(SimpleTestCase):
    def test_square_has_the_diagonal_step(self):
        steps = async_steps_config(config_structure(["", "a", "b", "ab"]))
        self.assertIn(AsyncStep(frozenset(), frozenset("ab")), steps)

    def test_missing_intermediate_blocks_the_step(self):
        steps = async_steps_config(config_structure(["", "a", "ab"]))
        self.assertNotIn(AsyncStep(frozenset(), frozenset("ab")), steps)
        self.assertIn(AsyncStep(frozenset("a"), frozenset("ab")), steps)

    def test_reflexive_steps(self):
        c = config_structure(["", "a", "ab"])
        steps = async_steps_config(c)
        for config in c.configs:
            self.assertIn(AsyncStep(config, config), steps)
        self.assertTrue(AsyncStep(frozenset(), frozenset()).is_reflexive)

    def test_left_closed_configs(self):
        self.assertEqual(left_closed_configs(related_samples.trivial_events()), [frozenset()])
        self.assertEqual(
            set(left_closed_configs(related_samples.asymmetric_conflict_events())),
            F("", "b", "s", "bs"),
        )
        self.assertEqual(left_closed_configs(event_structure([], events=["a"])), [])

    def test_event_steps_show_the_asymmetry(self):
        steps = async_steps_event(related_samples.asymmetric_conflict_events())
        self.assertNotIn(AsyncStep(frozenset("s"), frozenset("bs")), steps)
        self.assertIn(AsyncStep(frozenset("b"), frozenset("bs")), steps)
        for config in F("", "b", "s", "bs"):
            self.assertIn(AsyncStep(config, config), steps)

    def test_independent_events_step_together(self):
        steps = async_steps_event(related_samples.independent_events())
        self.assertIn(AsyncStep(frozenset(), frozenset("ab")), steps)


class TranslationTests(SimpleTestCase):
    def test_cintost_keeps_corners(self):
        self.assertEqual(cintost(config_structure(["", "a"])).configs, {C(), C("a", "a")})
        square = cintost(config_structure(["", "a", "b", "ab"]))
        self.assertEqual(len(square), 4)
        self.assertTrue(all(config.is_diagonal for config in square.configs))
        self.assertEqual(len(cintost(config_structure([]))), 0)

    def test_cintost2_fills_in(self):
        filled = cintost2(related_samples.concurrent_pair())
        self.assertEqual(filled.configs, samples.filled_square().configs)
        chain = cintost2(related_samples.sequential_pair())
        self.assertEqual(chain.configs, samples.chain().configs)
        self.assertEqual(len(cintost2(config_structure([]))), 0)

    def test_stintoc_projects_diagonals(self):
        square = F("", "a", "b", "ab")
        self.assertEqual(stintoc(samples.filled_square()).configs, square)
        self.assertEqual(stintoc(samples.empty_square()).configs, square)
        corners = cintost(config_structure(["", "a"]))
        self.assertEqual(stintoc(corners).configs, F("", "a"))

    def test_stintoc_forgets_concurrency(self):
        filled, empty = samples.filled_square(), samples.empty_square()
        self.assertIsNone(st_isomorphic(filled, empty))
        self.assertEqual(stintoc(filled), stintoc(empty))

    def test_cintost3(self):
        self.assertEqual(
            cintost3(config_structure(["", "a", "b", "ab"])).configs,
            samples.filled_square().configs,
        )
        chain = cintost3(related_samples.sequential_pair())
        self.assertEqual(chain.configs, samples.chain().configs)
        self.assertEqual(cintost3(config_structure([""])).configs, {EMPTY})

    def test_cintost3_needs_stable_input(self):
        with self.assertRaises(NotStableInput) as caught:
            cintost3(config_structure(["a"]))
        self.assertEqual(caught.exception.params["flag"], "rooted")
        with self.assertRaises(NotStableInput):
            cintost3(config_structure(["", "a", "b", "ac", "bc", "abc"]))

    def test_eintost(self):
        asymmetric = eintost(related_samples.asymmetric_conflict_events())
        self.assertEqual(asymmetric.configs, samples.asymmetric_conflict().configs)
        filled = eintost(related_samples.independent_events())
        self.assertEqual(filled.configs, samples.filled_square().configs)
        self.assertEqual(eintost(related_samples.trivial_events()).configs, {EMPTY})

    def test_stintoe(self):
        filled = stintoe(samples.filled_square())
        self.assertEqual(set(left_closed_configs(filled)), F("", "a", "b", "ab"))
        self.assertIn(AsyncStep(frozenset(), frozenset("ab")), async_steps_event(filled))
        trivial = stintoe(structure([EMPTY]))
        self.assertEqual(trivial.enabling, {(frozenset(), frozenset())})

    def test_stintoe_round_trip(self):
        for name in ("asymmetric-conflict", "filled-square", "empty-square", "chain", "choice"):
            with self.subTest(name=name):
                st = samples.SAMPLES[name]()
                self.assertIsNotNone(st_isomorphic(eintost(stintoe(st)), st))

    def test_stintoe_preconditions(self):
        with self.assertRaises(PreconditionViolated) as caught:
            stintoe(samples.triangle())
        self.assertEqual(caught.exception.params["flag"], PropertyFlag.ADJACENT_CLOSED)
        with self.assertRaises(PreconditionViolated) as caught:
            require_translatable(structure([C("a", "a")]))
        self.assertEqual(caught.exception.params["flag"], PropertyFlag.ROOTED)

    def test_round_trip_through_filled_translation(self):
        for events in ([], ["a"], ["a", "b"], ["a", "b", "c"]):
            for family in config_families(events):
                c = config_structure(family, events=events)
                self.assertEqual(stintoc(cintost2(c)), c)

    def test_filled_translation_is_adjacent_closed(self):
        for events in ([], ["a"], ["a", "b"], ["a", "b", "c"]):
            for family in config_families(events):
                c = config_structure(family, events=events)
                st = cintost2(c)
                self.assertTrue(is_adjacent_closed(st)[0])
                for step in async_steps_config(c):
                    self.assertIn(STConfig(step.target, step.source), st)

    @given(hst.sets(hst.sampled_from(subsets(["a", "b", "c"])), max_size=8))
    @QUICK_SETTINGS
    def test_round_trip_on_three_events(self, family):
        c = config_structure(family, events=["a", "b", "c"])
        self.assertEqual(stintoc(cintost2(c)), c)

    def test_async_steps_are_matched_by_single_steps(self):
        c = config_structure(["", "a", "b", "ab"])
        st = cintost2(c)
        for step in async_steps_config(c):
            current = STConfig(step.source, step.source)
            for event in sorted(step.target - step.source):
                current = current.start(event)
                self.assertIn(current, [s.target for s in steps_from(st, current.unstart(event))])
            for event in sorted(step.target - step.source):
                current = current.terminate(event)
                self.assertIn(current, st)
            self.assertEqual(current, STConfig(step.target, step.target))


class CorrespondenceTests(SimpleTestCase):
    def test_stable_adjacent_closed_round_trip(self):
        for st in exhaustive_structures():
            if is_stable(st) and is_adjacent_closed(st)[0]:
                self.assertIsNotNone(st_isomorphic(cintost3(stintoc(st)), st), str(st))

    def test_triangle_needs_adjacency(self):
        triangle = samples.triangle()
        self.assertTrue(is_stable(triangle))
        self.assertIsNone(st_isomorphic(cintost3(stintoc(triangle)), triangle))

    @given(set_families(max_events=3))
    @SLOW_SETTINGS
    def test_stable_output(self, drawn):
        events, family = drawn
        c = config_structure(family, events=events)
        if config_properties(c).stable:
            self.assertTrue(is_stable(cintost3(c)))

    @given(filled_structures(max_events=3))
    @SLOW_SETTINGS
    def test_stable_filled_samples_round_trip(self, st):
        if is_stable(st):
            self.assertIsNotNone(st_isomorphic(cintost3(stintoc(st)), st))

    def test_property_transfer(self):
        for st in exhaustive_structures():
            properties = config_properties(stintoc(st))
            self.assertTrue(properties.rooted)
            self.assertTrue(properties.connected)
            if closed_under_bounded_unions(st):
                self.assertTrue(properties.closed_bounded_unions)
            if closed_under_bounded_intersections(st):
                self.assertTrue(properties.closed_bounded_intersections)

    @given(event_structures())
    @QUICK_SETTINGS
    def test_event_translation(self, e):
        st = eintost(e)
        self.assertTrue(is_rooted(st))
        for step in async_steps_event(e):
            self.assertIn(STConfig(step.target, step.source), st)
        for config in st.configs:
            self.assertIn(AsyncStep(config.terminated, config.started), async_steps_event(e))

    def test_event_translation_of_stintoe(self):
        for events in (["a"], ["a", "b"]):
            for st in rooted_connected_structures(events):
                if not is_adjacent_closed(st)[0]:
                    continue
                e = stintoe(st)
                self.assertEqual(
                    set(left_closed_configs(e)),
                    {config.started for config in st.configs if config.is_diagonal},
                )
                self.assertEqual(
                    {AsyncStep(config.terminated, config.started) for config in st.configs},
                    {step for step in async_steps_event(e)},
                )


class MorphismTests(SimpleTestCase):
    def test_identity_and_composition_are_preserved(self):
        square = config_structure(["", "a", "b", "ab"])
        chain = config_structure(["", "a", "ab"])
        single = config_structure(["", "a"])
        identity = {"a": "a", "b": "b"}
        first = {"a": "a", "b": "b"}
        second = {"a": "a"}
        self.assertTrue(config_morphism_check(first, chain, square))
        self.assertTrue(config_morphism_check(second, square, single))
        self.assertTrue(is_st_morphism(identity, cintost2(square), cintost2(square)))
        self.assertEqual(map_st(cintost2(square), identity), cintost2(square).configs)
        composed = compose(first, second)
        self.assertTrue(config_morphism_check(composed, chain, single))
        for translate in (cintost, cintost2):
            with self.subTest(translate=translate.__name__):
                self.assertTrue(is_st_morphism(first, translate(chain), translate(square)))
                self.assertTrue(is_st_morphism(second, translate(square), translate(single)))
                self.assertTrue(is_st_morphism(composed, translate(chain), translate(single)))

    def test_non_morphisms_are_rejected(self):
        square = config_structure(["", "a", "b", "ab"])
        chain = config_structure(["", "a", "ab"])
        self.assertFalse(config_morphism_check({"a": "a", "b": "b"}, square, chain))
        self.assertFalse(is_st_morphism({"a": "a", "b": "b"}, cintost2(square), cintost2(chain)))

    def test_morphisms_transfer_exhaustively(self):
        families = [
            config_structure(family, events=["a", "b"])
            for family in config_families(["a", "b"])
            if frozenset() in family
        ]
        maps = [{"a": "a", "b": "b"}, {"a": "a"}, {"b": "b"}, {}]
        for source in families:
            for target in families:
                for mapping in maps:
                    if config_morphism_check(mapping, source, target):
                        self.assertTrue(
                            is_st_morphism(mapping, cintost2(source), cintost2(target))
                        )
