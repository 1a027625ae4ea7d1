from itertools import product

from django.test import SimpleTestCase, override_settings
from hypothesis import given

from src.core import samples as st_samples
from src.core.exceptions import (
    DimensionCap,
    LabelConflictInClass,
    LengthMismatch,
    PartialMap,
    PreconditionViolated,
    SearchBudgetExceeded,
    StructureError,
)
from src.core.properties import is_adjacent_closed
from src.core.strategies import MEDIUM_SETTINGS, exhaustive_structures, filled_structures
from src.core.structures import STConfig, structure
from src.equivalences.isomorphism import st_isomorphic
from src.hda import samples
from src.hda.cells import is_acyclic, is_non_degenerate
from src.hda.morphisms import hda_isomorphic
from src.hda.unfolding import history_unfolding
from src.sculpting.bulks import bulk_face, make_bulk
from src.sculpting.chains import (
    AlphaChain,
    alpha_chain_equiv,
    apply_chain,
    chain_list,
    chain_rewrite_closure,
    chain_to,
)
from src.sculpting.listing import EventListing
from src.sculpting.models import ChainOracle
from src.sculpting.quotient import quotient_events
from src.sculpting.sculptures import (
    bulk_event_equivalence,
    hintost_sculpture,
    is_sculpture,
    over_complicate,
    sculpintost,
    sculpture,
    sculpture_bound,
    sculptures_isomorphic,
    simplify,
    stintosculpture,
)
from src.sculpting.translations import event_classes, hintost, stintoh

HINTOST_ROUND_TRIP = ("single-event", "filled-square", "chain", "choice", "asymmetric-conflict-3")
def adjacent_closed_structures():
    return [st for st in exhaustive_structures() if is_adjacent_closed(st)[0]]


ROUND_TRIP_SAMPLES = (
    "single-event",
    "filled-square",
    "empty-square",
    "chain",
    "choice",
    "asymmetric-conflict",
    "asymmetric-conflict-3",
)


def C(started="", terminated=""):
    return STConfig.of(started, terminated)


def trivial():
    return structure([C()])


def applicable_chains(n, length):
    """Index lists only; kinds do not affect equivalence."""

    ranges = [range(1, n - step + 1) for step in range(length)]
    return [AlphaChain.of(("s", index) for index in indexes) for indexes in product(*ranges)]


class ListingTests(SimpleTestCase):
    def test_positions_are_one_based(self):
        listing = EventListing(("b", "a", "c"))
        self.assertEqual(listing[1], "b")
        self.assertEqual(listing.index("c"), 3)
        self.assertEqual(listing.restrict({"a", "c"}), EventListing(("a", "c")))
        self.assertEqual(listing.without(2), EventListing(("b", "c")))
        with self.assertRaises(IndexError):
            listing[0]

    def test_events_cannot_repeat(self):
        with self.assertRaises(ValueError):
            EventListing(("a", "a"))


class StintohTests(SimpleTestCase):
    def test_filled_square(self):
        h = stintoh(st_samples.filled_square())
        self.assertEqual(len(h), 9)
        self.assertIsNotNone(hda_isomorphic(h, samples.filled_square()))

    def test_trivial_structure(self):
        h = stintoh(trivial())
        self.assertEqual(h.cells(), ["(∅,∅)"])
        self.assertEqual(h.initial, "(∅,∅)")

    def test_faces_follow_the_listing(self):
        h = stintoh(st_samples.filled_square(), EventListing(("b", "a")))
        self.assertEqual(h.s("(ab,∅)", 1), "(a,∅)")
        self.assertEqual(h.t("(ab,∅)", 1), "(ab,b)")

    def test_needs_adjacent_closure(self):
        with self.assertRaises(PreconditionViolated):
            stintoh(st_samples.triangle())

    def test_translations_are_well_behaved(self):
        for st in adjacent_closed_structures():
            h = stintoh(st)
            self.assertEqual(len(h), len(st))
            self.assertTrue(is_acyclic(h)[0], str(st))
            self.assertTrue(is_non_degenerate(h)[0], str(st))

    @given(filled_structures(max_events=3))
    @MEDIUM_SETTINGS
    def test_listing_is_immaterial(self, st):
        reverse = EventListing(tuple(sorted(st.events, reverse=True)))
        self.assertIsNotNone(
            hda_isomorphic(stintoh(st), stintoh(st, reverse), up_to_reindexing=True)
        )

    def test_isomorphic_structures_translate_isomorphically(self):
        filled = st_samples.filled_square()
        renamed = filled.rename({"a": "x", "b": "y"})
        self.assertIsNotNone(hda_isomorphic(stintoh(filled), stintoh(renamed)))


class HintostTests(SimpleTestCase):
    def test_filled_square(self):
        st = hintost(samples.filled_square())
        self.assertEqual(len(st.events), 2)
        self.assertEqual(len(st), 9)
        self.assertIsNotNone(st_isomorphic(st, st_samples.filled_square()))

    def test_interleaving_keeps_four_events(self):
        classes = event_classes(samples.empty_square())
        self.assertEqual([event.name for event in classes], ["a1", "a2", "b1", "b2"])
        st = hintost(samples.empty_square())
        self.assertEqual(len(st.events), 4)
        self.assertEqual(len(st), 9)

    def test_square_joins_opposite_edges(self):
        classes = event_classes(samples.filled_square())
        self.assertEqual(
            {event.name: event.members for event in classes},
            {"a": frozenset({"a0", "a1"}), "b": frozenset({"b0", "b1"})},
        )

    def test_unfolding_collapses(self):
        cube = samples.open_cube()
        self.assertIsNotNone(st_isomorphic(hintost(cube), hintost(history_unfolding(cube))))

    def test_round_trip(self):
        for name in HINTOST_ROUND_TRIP:
            st = st_samples.SAMPLES[name]()
            with self.subTest(name):
                self.assertIsNotNone(st_isomorphic(hintost(stintoh(st)), st))

    def test_needs_a_non_degenerate_input(self):
        with self.assertRaises(PreconditionViolated):
            hintost(samples.loop())


class BulkTests(SimpleTestCase):
    def test_sizes(self):
        self.assertEqual(len(make_bulk(0).hda), 1)
        self.assertEqual(len(make_bulk(1).hda), 3)
        self.assertEqual(len(make_bulk(2).hda), 9)
        self.assertEqual(len(make_bulk(3).hda), 27)

    def test_top_cell(self):
        bulk = make_bulk(2, EventListing(("a", "b")), {"a": "x", "b": "y"})
        self.assertEqual(bulk.top, "(ab,∅)")
        self.assertEqual(bulk.hda.cells(2), ["(ab,∅)"])
        self.assertEqual(bulk.axis_label("a"), "x")

    @override_settings(TRUECC_SCULPTURE_MAX_DIM=2)
    def test_dimension_cap(self):
        with self.assertRaises(DimensionCap):
            make_bulk(3)
        make_bulk(3, cap=3)

    def test_bulk_face(self):
        listing = EventListing(("a", "b"))
        self.assertEqual(bulk_face(C("ab"), "s", 1, listing), C("b"))
        self.assertEqual(bulk_face(C("ab", "a"), "t", 1, listing), C("ab", "ab"))
        with self.assertRaises(PartialMap):
            bulk_face(C("ab", "a"), "s", 2, listing)


class ChainTests(SimpleTestCase):
    def test_parse(self):
        chain = AlphaChain.parse("s1 t2")
        self.assertEqual(chain.maps, (("s", 1), ("t", 2)))
        self.assertEqual(str(chain), "s1 t2")
        self.assertEqual(str(AlphaChain()), "id")

    def test_apply(self):
        listing = EventListing(("a", "b"))
        self.assertEqual(apply_chain(AlphaChain.parse("t1 s1"), C("ab"), listing), C("a", "a"))
        self.assertEqual(apply_chain(AlphaChain(), C("ab"), listing), C("ab"))

    def test_chain_to(self):
        listing = EventListing(("a", "b"))
        self.assertEqual(str(chain_to(C("a"), listing)), "s2")
        self.assertEqual(str(chain_to(C("ab", "a"), listing)), "t1")
        for key in make_bulk(2, listing).keys.values():
            self.assertEqual(apply_chain(chain_to(key, listing), C("ab"), listing), key)

    def test_list_rule(self):
        listing = EventListing.numbered(3)
        self.assertEqual(chain_list(AlphaChain.parse("s2 t1"), listing), EventListing(("3",)))
        with self.assertRaises(PartialMap):
            chain_list(AlphaChain.parse("s4"), listing)

    def test_equivalence(self):
        self.assertTrue(
            alpha_chain_equiv(AlphaChain.parse("s1 s1"), AlphaChain.parse("s2 s1"), 2)
        )
        self.assertTrue(alpha_chain_equiv(AlphaChain.parse("t2"), AlphaChain.parse("t2"), 3))
        self.assertFalse(alpha_chain_equiv(AlphaChain.parse("s1"), AlphaChain.parse("s2"), 2))

    def test_equivalence_errors(self):
        with self.assertRaises(LengthMismatch):
            alpha_chain_equiv(AlphaChain.parse("s1"), AlphaChain.parse("s1 s1"), 3)
        with self.assertRaises(PartialMap):
            alpha_chain_equiv(AlphaChain.parse("s3"), AlphaChain.parse("s1"), 2)

    def test_rewrite_closure(self):
        self.assertEqual(
            chain_rewrite_closure(AlphaChain.parse("s1 s1")), frozenset({(1, 1), (2, 1)})
        )

    def test_list_rule_agrees_with_rewrites(self):
        for n in range(1, 5):
            for length in range(0, n + 1):
                chains = applicable_chains(n, length)
                for a, b in product(chains, repeat=2):
                    with self.subTest(n=n, a=str(a), b=str(b)):
                        self.assertEqual(
                            alpha_chain_equiv(a, b, n),
                            alpha_chain_equiv(a, b, n, oracle=ChainOracle.REWRITES),
                        )


class SculptureTests(SimpleTestCase):
    def test_translated_sculptures(self):
        two = stintosculpture(st_samples.asymmetric_conflict())
        three = stintosculpture(st_samples.asymmetric_conflict_three())
        self.assertEqual((two.dim, three.dim), (2, 3))
        self.assertIsNotNone(hda_isomorphic(two.hda, three.hda))
        self.assertFalse(sculptures_isomorphic(two, three))
        self.assertEqual(stintosculpture(trivial()).dim, 0)

    def test_renamed_sculptures_are_isomorphic(self):
        filled = st_samples.filled_square()
        renamed = filled.rename({"a": "y", "b": "x"})
        self.assertTrue(sculptures_isomorphic(stintosculpture(filled), stintosculpture(renamed)))

    def test_round_trip(self):
        for name in ROUND_TRIP_SAMPLES:
            st = st_samples.SAMPLES[name]()
            with self.subTest(name):
                sc = stintosculpture(st)
                self.assertIsNotNone(st_isomorphic(sculpintost(sc), st))
                self.assertIsNotNone(st_isomorphic(hintost_sculpture(sc), sculpintost(sc)))

    def test_round_trip_on_adjacent_closed_structures(self):
        for st in adjacent_closed_structures():
            sc = stintosculpture(st)
            self.assertIsNotNone(st_isomorphic(sculpintost(sc), st), str(st))
            self.assertIsNotNone(st_isomorphic(hintost_sculpture(sc), sculpintost(sc)), str(st))

    def test_whole_bulk(self):
        bulk = make_bulk(2)
        sc = sculpture(bulk.hda, bulk, {cell: cell for cell in bulk.hda.cells()})
        self.assertEqual(len(sculpintost(sc)), 9)
        self.assertEqual(len(sculpintost(stintosculpture(trivial()))), 1)

    def test_interleaving_in_a_bulk(self):
        sc = stintosculpture(st_samples.empty_square())
        st = hintost_sculpture(sc)
        self.assertEqual(len(st.events), 2)
        self.assertIsNotNone(st_isomorphic(st, st_samples.empty_square()))

    def test_embedding_must_be_a_morphism(self):
        bulk = make_bulk(2)
        h = samples.filled_square()
        with self.assertRaises(StructureError):
            sculpture(h, bulk, {cell: "(∅,∅)" for cell in h.cells()})

    def test_over_complicate_and_simplify(self):
        sc = stintosculpture(st_samples.filled_square())
        bigger = over_complicate(sc, 4)
        self.assertEqual(bigger.dim, 4)
        self.assertEqual(list(bigger.bulk.listing), ["a", "b", "x1", "x2"])
        self.assertTrue(sculptures_isomorphic(sc, bigger))
        self.assertEqual(simplify(bigger).dim, 2)
        with self.assertRaises(StructureError):
            over_complicate(sc, 1)

    def test_as_json(self):
        data = stintosculpture(st_samples.filled_square()).as_json()
        self.assertEqual(data["bulkDim"], 2)
        self.assertEqual(data["bulkLabels"], {"a": "a", "b": "b"})
        self.assertEqual(data["embedding"]["(ab,a)"], [[1, 2], [1]])


class SculptureSearchTests(SimpleTestCase):
    def test_bounds(self):
        self.assertEqual(sculpture_bound(samples.angelic_choice()), 3)
        self.assertEqual(sculpture_bound(samples.demonic_choice()), 3)
        self.assertEqual(sculpture_bound(samples.speed_game()), 4)

    def test_angelic_choice(self):
        sc = is_sculpture(samples.angelic_choice())
        self.assertIsNotNone(sc)
        self.assertEqual(sc.dim, 3)
        labels = sorted(sc.bulk.axis_label(axis) for axis in sc.bulk.listing)
        self.assertEqual(labels, ["d", "e", "f"])

    def test_demonic_choice(self):
        self.assertIsNone(is_sculpture(samples.demonic_choice()))

    def test_speed_game(self):
        self.assertIsNone(is_sculpture(samples.speed_game()))

    def test_filled_square(self):
        sc = is_sculpture(samples.filled_square())
        self.assertEqual(sc.dim, 2)
        self.assertIsNotNone(st_isomorphic(sculpintost(sc), st_samples.filled_square()))

    @override_settings(TRUECC_SCULPTURE_MAX_DIM=2)
    def test_dimension_cap(self):
        with self.assertRaises(DimensionCap):
            is_sculpture(samples.angelic_choice())

    def test_max_dim_below_the_label_bound(self):
        self.assertEqual(sculpture_bound(samples.angelic_choice()), 3)
        with self.assertRaises(DimensionCap) as caught:
            is_sculpture(samples.angelic_choice(), max_dim=2)
        self.assertEqual(caught.exception.params, {"dim": 3, "cap": 2})

    def test_budget(self):
        with self.assertRaises(SearchBudgetExceeded):
            is_sculpture(samples.angelic_choice(), budget=2)

    def test_sculptures_agree_with_hintost(self):
        builds = (samples.angelic_choice, samples.empty_square, samples.asymmetric_conflict_three)
        for build in builds:
            sc = is_sculpture(build())
            with self.subTest(build.__name__):
                self.assertIsNotNone(st_isomorphic(hintost_sculpture(sc), sculpintost(sc)))


class QuotientTests(SimpleTestCase):
    def test_identity(self):
        st = st_samples.filled_square()
        self.assertEqual(quotient_events(st, []), st)
        self.assertEqual(quotient_events(st, [{"a"}, {"b"}]), st)

    def test_label_conflict(self):
        with self.assertRaises(LabelConflictInClass):
            quotient_events(st_samples.filled_square(), [{"a", "b"}])

    def test_bulk_equates_events(self):
        h = samples.asymmetric_conflict_three()
        sc = is_sculpture(h)
        self.assertEqual(sc.dim, 2)
        classes = bulk_event_equivalence(sc)
        self.assertEqual(classes, [frozenset({"b"}), frozenset({"s1", "s2"})])
        quotient = quotient_events(hintost(h), classes)
        self.assertIsNotNone(st_isomorphic(quotient, st_samples.asymmetric_conflict()))
        self.assertIsNotNone(st_isomorphic(quotient, hintost_sculpture(sc)))
