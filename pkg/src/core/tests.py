from django.test import SimpleTestCase, override_settings
from hypothesis import given

from src.core import samples
from src.core.exceptions import (
    ConfigNotInStructure,
    ConstraintTnotSubsetS,
    MissingClosure,
    NotRooted,
    TargetNotInStructure,
    UndeclaredEvent,
)
from src.core.models import ClosureRule, StepKind
from src.core.properties import (
    closed_under_single_events,
    is_adjacent_closed,
    is_connected,
    is_rooted,
    is_stable,
    iter_intersection_violations,
    iter_union_violations,
    property_report,
)
from src.core.relations import (
    causality,
    cc_equivalent,
    cc_simulates,
    concurrency,
    in_conflict,
    pomset,
)
from src.core.semantics import (
    Path,
    enumerate_rooted_paths,
    reachable_part,
    st_trace,
    steps_from,
    step_graph,
    trace_set,
)
from src.core.strategies import (
    ACCEPTANCE_SETTINGS,
    QUICK_SETTINGS,
    STANDARD_SETTINGS,
    exhaustive_structures,
    filled_structures,
    rooted_connected_structures,
    st_structures,
)
from src.core.structures import EMPTY, STConfig, structure, validate_st


def C(started="", terminated=""):
    return STConfig.of(started, terminated)


def exhaustive_small():
    for events in ([], ["a"], ["a", "b"]):
        yield from rooted_connected_structures(events)


class ValidateTests(SimpleTestCase):
    def test_filled_square_is_accepted(self):
        st = samples.filled_square()
        self.assertEqual(len(st), 9)
        self.assertEqual(st.label("a"), "a")

    def test_missing_diagonal_is_rejected(self):
        with self.assertRaises(MissingClosure) as caught:
            validate_st(["a"], [C("a")], mode="strict")
        self.assertEqual(caught.exception.code, "missing_closure")
        self.assertEqual(caught.exception.params["config"], C("a"))

    def test_empty_structure_is_accepted(self):
        st = validate_st([], [])
        self.assertEqual(len(st), 0)
        report = property_report(st)
        self.assertFalse(report.rooted)
        self.assertTrue(report.connected)

    def test_terminated_must_be_started(self):
        with self.assertRaises(ConstraintTnotSubsetS):
            validate_st(["a", "b"], [C("a", "b"), C("a", "a")])

    def test_undeclared_events_are_rejected(self):
        with self.assertRaises(UndeclaredEvent):
            validate_st(["a"], [C("ab", "ab")])
        with self.assertRaises(UndeclaredEvent):
            validate_st(["a"], [C("a", "a")], {"z": "z"})

    def test_weak_mode_accepts_larger_diagonal(self):
        raw = [C(), C("a"), C("ab", "ab")]
        with self.assertRaises(MissingClosure):
            validate_st(["a", "b"], raw, mode="strict")
        st = validate_st(["a", "b"], raw, mode="weak")
        self.assertEqual(property_report(st).mode, "weak")

    @override_settings(TRUECC_VALIDATION_MODE="weak")
    def test_mode_falls_back_to_settings(self):
        st = validate_st(["a", "b"], [C(), C("a"), C("ab", "ab")])
        self.assertEqual(st.mode, "weak")

    def test_config_rendering(self):
        self.assertEqual(str(C("ab", "a")), "(ab,a)")
        self.assertEqual(str(EMPTY), "(∅,∅)")
        self.assertEqual(C("ab", "a").dimension, 3)


class PropertyTests(SimpleTestCase):
    def test_parallel_switch_fails_only_intersections(self):
        report = property_report(samples.parallel_switch())
        self.assertFalse(report.closed_bounded_intersections)
        self.assertFalse(report.stable)
        for flag in ("rooted", "connected", "closed_bounded_unions", "adjacent_closed"):
            self.assertTrue(getattr(report, flag), flag)
        witness = report.witnesses["closed_bounded_intersections"]
        self.assertEqual(witness.configs[:2], (C("0b", "0"), C("1b", "1")))
        self.assertEqual(witness.missing, C("b"))

    def test_parallel_switch_reports_the_switch_pair(self):
        violations = list(iter_intersection_violations(samples.parallel_switch()))
        self.assertTrue(
            any(
                set(v.configs[:2]) == {C("01b", "0"), C("01b", "1")} and v.missing == C("01b")
                for v in violations
            )
        )

    def test_resolved_conflict_fails_only_unions(self):
        st = samples.resolved_conflict()
        report = property_report(st)
        self.assertFalse(report.closed_bounded_unions)
        for flag in ("rooted", "connected", "closed_bounded_intersections", "adjacent_closed"):
            self.assertTrue(getattr(report, flag), flag)
        self.assertTrue(
            any(
                set(v.configs[:2]) == {C("bc"), C("ac")} and v.missing == C("abc")
                for v in iter_union_violations(st)
            )
        )

    def test_empty_square_is_adjacent_closed_but_not_stable(self):
        report = property_report(samples.empty_square())
        self.assertTrue(report.adjacent_closed)
        self.assertFalse(report.closed_bounded_unions)
        self.assertFalse(report.closed_bounded_intersections)
        self.assertEqual(report.witnesses["closed_bounded_unions"].missing, C("ab"))

    def test_triangle_is_stable_but_not_adjacent_closed(self):
        st = samples.triangle()
        self.assertTrue(is_stable(st))
        closed, witness = is_adjacent_closed(st)
        self.assertFalse(closed)
        self.assertEqual(witness.rule, ClosureRule.START_START)
        self.assertEqual(witness.missing, C("b"))

    def test_triangle_single_event_witness(self):
        closed, witness = closed_under_single_events(samples.triangle())
        self.assertFalse(closed)
        self.assertEqual(witness.configs, (C("ab"),))
        self.assertEqual(witness.event, "b")
        self.assertEqual(witness.missing, C("ab", "b"))

    def test_single_event_and_corners_are_closed(self):
        self.assertTrue(is_adjacent_closed(samples.single_event())[0])
        self.assertTrue(closed_under_single_events(samples.filled_square())[0])
        corners = structure([C(), C("a", "a"), C("ab", "ab")])
        self.assertTrue(closed_under_single_events(corners)[0])

    def test_report_serializes(self):
        payload = property_report(samples.triangle()).as_json()
        self.assertEqual(payload["witnesses"]["adjacent_closed"]["rule"], 1)
        self.assertEqual(payload["witnesses"]["closed_single_events"]["missing"], "(ab,b)")

    def test_adjacency_matches_single_events_exhaustively(self):
        for st in exhaustive_structures():
            self.assertEqual(
                is_adjacent_closed(st)[0], closed_under_single_events(st)[0], str(st)
            )

    @given(st_structures(max_events=4))
    @ACCEPTANCE_SETTINGS
    def test_adjacency_matches_single_events_on_samples(self, st):
        self.assertEqual(is_adjacent_closed(st)[0], closed_under_single_events(st)[0])

    @given(st_structures(min_events=4, max_events=4, max_growth=24))
    @STANDARD_SETTINGS
    def test_adjacency_matches_single_events_on_four_events(self, st):
        self.assertEqual(len(st.events), 4)
        self.assertEqual(is_adjacent_closed(st)[0], closed_under_single_events(st)[0])

    @given(filled_structures(max_events=4))
    @QUICK_SETTINGS
    def test_filled_samples_are_adjacent_closed(self, st):
        self.assertTrue(is_adjacent_closed(st)[0])
        self.assertTrue(closed_under_single_events(st)[0])


class StepTests(SimpleTestCase):
    def test_steps_from_root_of_filled_square(self):
        steps = steps_from(samples.filled_square(), EMPTY)
        self.assertEqual([step.target for step in steps], [C("a"), C("b")])
        self.assertTrue(all(step.kind == StepKind.START for step in steps))

    def test_maximal_config_has_no_steps(self):
        self.assertEqual(steps_from(samples.filled_square(), C("ab", "ab")), [])

    def test_empty_square_only_terminates(self):
        steps = steps_from(samples.empty_square(), C("a"))
        self.assertEqual(len(steps), 1)
        self.assertEqual(steps[0].kind, StepKind.TERMINATE)
        self.assertEqual(steps[0].target, C("a", "a"))

    def test_steps_require_membership(self):
        with self.assertRaises(ConfigNotInStructure):
            steps_from(samples.chain(), C("b"))

    def test_rooted_path_counts(self):
        self.assertEqual(len(enumerate_rooted_paths(samples.filled_square(), C("ab", "ab"))), 6)
        self.assertEqual(len(enumerate_rooted_paths(samples.empty_square(), C("ab", "ab"))), 2)
        paths = enumerate_rooted_paths(samples.chain(), EMPTY)
        self.assertEqual(paths, [Path()])

    def test_rooted_paths_respect_bound(self):
        paths = enumerate_rooted_paths(samples.filled_square(), C("ab", "ab"), bound=4)
        self.assertEqual(len(paths), 4)

    def test_unknown_target(self):
        with self.assertRaises(TargetNotInStructure):
            enumerate_rooted_paths(samples.chain(), C("b", "b"))

    def test_paths_have_the_dimension_as_length(self):
        for st in exhaustive_small():
            for config in st.sorted_configs():
                for path in enumerate_rooted_paths(st, config):
                    self.assertEqual(len(path), config.dimension)

    def test_steps_raise_the_dimension_by_one_exhaustively(self):
        for st in exhaustive_structures():
            for source, target in step_graph(st).edges:
                self.assertEqual(target.dimension, source.dimension + 1, str(st))

    def test_st_traces(self):
        st = samples.filled_square()
        traces = {str(st_trace(path)) for path in enumerate_rooted_paths(st, C("ab", "ab"))}
        self.assertIn("a^0 b^0 a^1 b^2", traces)
        self.assertIn("a^0 a^1 b^0 b^3", traces)
        self.assertEqual(str(st_trace(Path())), "")

    def test_trace_needs_rooted_path(self):
        st = samples.chain()
        step = steps_from(st, C("a"))[0]
        with self.assertRaises(NotRooted):
            st_trace(Path((step,)))

    def test_trace_set_of_chain(self):
        traces = {str(trace) for trace in trace_set(samples.chain())}
        self.assertEqual(traces, {"", "a^0", "a^0 a^1", "a^0 a^1 b^0", "a^0 a^1 b^0 b^3"})

    def test_step_graph_counts(self):
        graph = step_graph(samples.filled_square())
        self.assertEqual((graph.number_of_nodes(), graph.number_of_edges()), (9, 12))

    def test_reachable_part(self):
        st = samples.filled_square()
        self.assertEqual(reachable_part(st), st)
        jumpy = structure([C(), C("ab"), C("ab", "ab")])
        self.assertEqual(reachable_part(jumpy).configs, frozenset({EMPTY}))
        self.assertEqual(len(reachable_part(validate_st([], []))), 0)

    @given(st_structures(max_events=3))
    @QUICK_SETTINGS
    def test_reachable_part_is_idempotent_and_connected(self, st):
        once = reachable_part(st)
        self.assertEqual(reachable_part(once), once)
        self.assertTrue(is_connected(once))
        self.assertTrue(is_rooted(once))


class RelationTests(SimpleTestCase):
    def test_empty_square_interleaves(self):
        st = samples.empty_square()
        top = C("ab", "ab")
        self.assertEqual(concurrency(st, top), frozenset())
        self.assertEqual(causality(st, top), frozenset())
        self.assertFalse(in_conflict(st, {"a", "b"}))

    def test_filled_square_concurrency(self):
        self.assertEqual(
            concurrency(samples.filled_square(), C("ab", "ab")), {frozenset({"a", "b"})}
        )

    def test_chain_causality(self):
        st = samples.chain()
        self.assertEqual(causality(st, C("ab", "ab")), {("a", "b")})
        self.assertEqual(concurrency(st, C("ab", "ab")), frozenset())

    def test_conflict(self):
        self.assertTrue(in_conflict(samples.choice(), {"a", "b"}))
        self.assertFalse(in_conflict(samples.asymmetric_conflict(), {"b", "s"}))
        self.assertFalse(in_conflict(samples.chain(), set()))
        with self.assertRaises(UndeclaredEvent):
            in_conflict(samples.chain(), {"z"})

    def test_cc_equivalence(self):
        filled = samples.filled_square()
        renamed = filled.rename({"a": "x", "b": "y"})
        top = C("ab", "ab")
        self.assertTrue(cc_equivalent(top, filled, C("xy", "xy"), renamed))
        self.assertFalse(cc_equivalent(top, filled, top, samples.empty_square()))
        self.assertTrue(cc_equivalent(EMPTY, filled, EMPTY, samples.chain()))
        self.assertTrue(cc_simulates(filled, renamed))
        self.assertFalse(cc_simulates(samples.empty_square(), filled))

    def test_relations_are_disjoint_and_ordered(self):
        for st in exhaustive_structures():
            for config in st.sorted_configs():
                together = concurrency(st, config)
                ordered = causality(st, config)
                for cause, effect in ordered:
                    self.assertNotIn(frozenset((cause, effect)), together)
                self.assertTrue(pomset(st, config).is_partial_order())
                if is_stable(st):
                    for first in sorted(config.started):
                        for second in sorted(config.started):
                            if first < second:
                                self.assertEqual(
                                    frozenset((first, second)) in together,
                                    (first, second) not in ordered
                                    and (second, first) not in ordered,
                                )

    def test_conflicting_sets_never_start_together(self):
        for st in exhaustive_structures():
            if in_conflict(st, st.events):
                self.assertFalse(any(config.started == st.events for config in st.configs))

    @given(st_structures(max_events=3))
    @QUICK_SETTINGS
    def test_disjointness_on_samples(self, st):
        for config in st.sorted_configs():
            together = concurrency(st, config)
            for pair in causality(st, config):
                self.assertNotIn(frozenset(pair), together)
