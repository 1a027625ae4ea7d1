from django.test import SimpleTestCase
from hypothesis import assume, given

from src.core import samples
from src.core.exceptions import EmptyRefinementImage, SearchBudgetExceeded, StructureError
from src.core.properties import is_rooted
from src.core.strategies import (
    QUICK_SETTINGS,
    all_configs,
    rooted_connected_structures,
    st_structures,
)
from src.core.structures import EMPTY, STConfig, structure
from src.equivalences.bisimulation import st_hh_bisimilar
from src.equivalences.isomorphism import st_isomorphic
from src.refinement.models import PreservationStatus
from src.refinement.preservation import (
    PRESERVED_FLAGS,
    check_preservation,
    experimental_trace_preservation,
)
from src.refinement.refine import RefinementFunction, refine, singleton_structure


def C(started="", terminated=""):
    return STConfig.of(started, terminated)


def chain_cd():
    return structure([("", ""), ("c", ""), ("c", "c"), ("cd", "c"), ("cd", "cd")])


def parallel_cd():
    return structure(all_configs(["c", "d"]))


IMAGES = {
    "singleton": lambda: singleton_structure("x"),
    "chain": lambda: structure([("", ""), ("x", ""), ("x", "x"), ("xy", "x"), ("xy", "xy")]),
    "parallel": lambda: structure(all_configs(["x", "y"])),
    "choice": lambda: structure([("", ""), ("x", ""), ("x", "x"), ("y", ""), ("y", "y")]),
    "interleaved": lambda: samples.empty_square().rename({"a": "x", "b": "y"}),
}


def small_bases():
    for events in ([], ["a"], ["a", "b"]):
        yield from rooted_connected_structures(events)


class RefinementFunctionTests(SimpleTestCase):
    def test_unrefined_labels_use_a_singleton(self):
        image = RefinementFunction()["a"]
        self.assertEqual(image, singleton_structure("a"))
        self.assertEqual(len(image), 3)

    def test_empty_image_is_refused(self):
        with self.assertRaises(EmptyRefinementImage):
            RefinementFunction({"a": structure([("", "")])})

    def test_separator_is_reserved(self):
        with self.assertRaises(StructureError):
            RefinementFunction({"a": structure([("", ""), (["x.y"], []), (["x.y"], ["x.y"])])})


class RefineTests(SimpleTestCase):
    def test_singleton_refinement_is_the_identity(self):
        refined = refine(samples.filled_square(), RefinementFunction())
        self.assertEqual(refined.events, frozenset({"a.a", "b.b"}))
        self.assertIsNotNone(st_isomorphic(refined, samples.filled_square()))

    def test_chain_refined_by_a_chain(self):
        refined = refine(samples.chain(), RefinementFunction({"a": chain_cd()}))
        expected = structure(
            [
                ("", ""),
                ("c", ""),
                ("c", "c"),
                ("cd", "c"),
                ("cd", "cd"),
                ("cdb", "cd"),
                ("cdb", "cdb"),
            ]
        )
        self.assertEqual(len(refined), 7)
        self.assertEqual(refined.label("a.c"), "c")
        self.assertEqual(refined.label("b.b"), "b")
        self.assertIsNotNone(st_isomorphic(refined, expected))

    def test_single_event_refined_by_parallel_events(self):
        refined = refine(samples.single_event(), RefinementFunction({"a": parallel_cd()}))
        self.assertEqual(refined.events, frozenset({"a.c", "a.d"}))
        self.assertEqual(len(refined), 9)
        self.assertIn(STConfig.of(["a.c", "a.d"], []), refined)

    def test_running_events_never_use_a_maximal_image(self):
        refined = refine(samples.single_event(), RefinementFunction({"a": chain_cd()}))
        running = [config for config in refined.configs if config.started and config.running]
        self.assertNotIn(STConfig.of(["a.c", "a.d"], ["a.c", "a.d"]), running)
        self.assertEqual(len(refined), 5)

    def test_budget(self):
        r = RefinementFunction({"a": parallel_cd(), "b": parallel_cd()})
        with self.assertRaises(SearchBudgetExceeded):
            refine(samples.filled_square(), r, budget=10)

    def test_refinement_is_well_defined(self):
        for base in small_bases():
            for name, build in IMAGES.items():
                r = RefinementFunction({"a": build(), "b": build()})
                with self.subTest(base=str(base), image=name):
                    refined = refine(base, r)
                    self.assertIn(EMPTY, refined)

    @QUICK_SETTINGS
    @given(st_structures(max_events=2), st_structures(max_events=2))
    def test_refinement_of_sampled_structures(self, base, image):
        assume(any(config != EMPTY for config in image.configs))
        refined = refine(base, RefinementFunction({"a": image, "b": image}))
        self.assertTrue(is_rooted(refined))


class CongruenceTests(SimpleTestCase):
    def test_isomorphism_congruence(self):
        r = RefinementFunction({"a": chain_cd()})
        renamed = samples.filled_square().rename({"a": "p", "b": "q"})
        other = r.rename({"a": {"c": "u", "d": "v"}})
        self.assertIsNotNone(
            st_isomorphic(refine(samples.filled_square(), r), refine(renamed, other))
        )

    def test_hh_congruence(self):
        a, b = samples.asymmetric_conflict(), samples.asymmetric_conflict_three()
        r = RefinementFunction({"s": chain_cd(), "b": parallel_cd()})
        self.assertTrue(st_hh_bisimilar(a, b))
        self.assertTrue(st_hh_bisimilar(refine(a, r), refine(b, r)))


class PreservationTests(SimpleTestCase):
    def test_filled_square_with_singletons(self):
        report = check_preservation(samples.filled_square(), RefinementFunction())
        self.assertTrue(report.preserved)
        for flag in PRESERVED_FLAGS:
            self.assertEqual(report.statuses[flag], PreservationStatus.HOLDS)

    def test_unmet_hypothesis_is_not_applicable(self):
        r = RefinementFunction({"a": samples.triangle()})
        report = check_preservation(samples.single_event(), r)
        self.assertFalse(report.before.witnesses.get("adjacent_closed"))
        self.assertEqual(report.statuses["adjacent_closed"], PreservationStatus.NOT_APPLICABLE)
        self.assertEqual(report.as_json()["statuses"]["adjacent_closed"], "not_applicable")

    def test_rooted_is_always_preserved(self):
        r = RefinementFunction({"a": parallel_cd(), "b": samples.triangle()})
        report = check_preservation(samples.empty_square(), r)
        self.assertEqual(report.statuses["rooted"], PreservationStatus.HOLDS)
        self.assertTrue(report.after.rooted)

    def test_implications_on_small_bases(self):
        for base in small_bases():
            for name, build in IMAGES.items():
                r = RefinementFunction({"a": build(), "b": build()})
                with self.subTest(base=str(base), image=name):
                    report = check_preservation(base, r)
                    self.assertTrue(report.preserved, report.as_json()["statuses"])


class TracePreservationTests(SimpleTestCase):
    def test_reports_before_and_after(self):
        r = RefinementFunction({"s": chain_cd()})
        with self.assertLogs("src.refinement.preservation", "INFO"):
            result = experimental_trace_preservation(
                samples.asymmetric_conflict(), samples.asymmetric_conflict_three(), r
            )
        self.assertTrue(result.traces_before)
        self.assertTrue(result.cc_before)
        self.assertEqual(
            set(result.as_json()), {"tracesBefore", "tracesAfter", "ccBefore", "ccAfter"}
        )

    def test_squares_differ_before_refinement(self):
        result = experimental_trace_preservation(
            samples.filled_square(), samples.empty_square(), RefinementFunction()
        )
        self.assertFalse(result.traces_before)
        self.assertFalse(result.traces_after)
