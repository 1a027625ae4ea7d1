from django.test import SimpleTestCase, override_settings
from hypothesis import given

from src.core import samples as st_samples
from src.core.exceptions import (
    ConfigNotInStructure,
    InvalidValuation,
    MissingDiagonalWithC,
    SCOverlap,
    TnotSubsetS,
)
from src.core.semantics import steps_from
from src.core.strategies import (
    ACCEPTANCE_SETTINGS,
    STANDARD_SETTINGS,
    st_structures,
    stc_structures,
)
from src.core.structures import STConfig
from src.equivalences.isomorphism import st_isomorphic
from src.related.structures import config_structure
from src.stc import samples
from src.stc.chu import (
    ChuSpace,
    chu2_decode,
    chu2_encode,
    chu3_decode,
    chu3_encode,
    chu4_decode,
    chu4_encode,
    chu_order,
    chu_steps,
)
from src.stc.models import CancellationKind, ChuOrder, ChuValue
from src.stc.steps import default_kinds, stc_steps
from src.stc.structures import (
    STC_EMPTY,
    STCConfig,
    maximal_configs,
    st_to_stc,
    stc_project_st,
    stc_structure,
)

Kind = CancellationKind


def X(started="", terminated="", canceled=""):
    return STCConfig.of(started, terminated, canceled)


def targets(steps):
    return sorted(str(step.target) for step in steps)


def enabling_structure():
    return stc_structure(
        [("", "", ""), ("", "", "e"), ("e", "", ""), ("e", "e", ""), ("f", "", ""), ("f", "f", "")]
    )


class ValidationTests(SimpleTestCase):
    def test_choice_structures_are_accepted(self):
        self.assertEqual(len(samples.gen_angelic()), 7)
        self.assertEqual(len(samples.gen_demonic()), 9)

    def test_started_and_canceled_overlap(self):
        with self.assertRaises(SCOverlap):
            stc_structure([("d", "", "d")])

    def test_terminated_must_be_started(self):
        with self.assertRaises(TnotSubsetS):
            stc_structure([("", "d", "")])

    def test_missing_diagonal_with_larger_cancellation(self):
        with self.assertRaises(MissingDiagonalWithC):
            stc_structure([("", "", ""), ("d", "", "e"), ("d", "d", "")])

    def test_root_alone(self):
        self.assertEqual(stc_structure([("", "", "")]).configs, frozenset({STC_EMPTY}))

    def test_string_form(self):
        self.assertEqual(str(X("d", "", "e")), "(d,∅,e)")


class StepTests(SimpleTestCase):
    def test_demonic_cancels_on_start(self):
        steps = stc_steps(samples.gen_demonic(), STC_EMPTY, {Kind.CANCEL_ONE_START})
        self.assertEqual(targets(steps), ["(d,∅,e)", "(d,∅,f)"])
        self.assertEqual({step.event for step in steps}, {"d"})

    def test_angelic_cancels_on_the_choice(self):
        steps = stc_steps(samples.gen_angelic(), X("d", "d"), {Kind.CANCEL_ONE_START})
        self.assertEqual(targets(steps), ["(de,d,f)", "(df,d,e)"])

    def test_plain_steps_keep_cancellation(self):
        steps = stc_steps(samples.gen_demonic(), X("d", "", "e"), {Kind.START, Kind.TERMINATE})
        self.assertEqual(targets(steps), ["(d,d,e)"])
        self.assertEqual(steps[0].kind, Kind.TERMINATE)

    def test_maximal_configurations_have_no_steps(self):
        stc = samples.gen_angelic()
        for config in maximal_configs(stc):
            self.assertEqual(stc_steps(stc, config, set(Kind)), [])

    def test_unknown_configuration(self):
        with self.assertRaises(ConfigNotInStructure):
            stc_steps(samples.gen_angelic(), X("e"))

    def test_single_and_multiple_cancellation(self):
        stc = samples.gen_shutdown_backup(2)
        steps = stc_steps(stc, STC_EMPTY)
        shutdown = [step for step in steps if step.target == X("s", "", ["b1", "b2"])]
        self.assertEqual([step.kind for step in shutdown], [Kind.CANCEL_MANY_START])
        finish = stc_steps(stc, X("s"), {Kind.CANCEL_ONE_TERMINATE, Kind.CANCEL_MANY_TERMINATE})
        self.assertEqual([step.kind for step in finish], [Kind.CANCEL_MANY_TERMINATE])
        self.assertEqual(finish[0].target, X("s", "s", ["b1", "b2"]))

    def test_enabling_steps_never_start_a_canceled_event(self):
        stc = enabling_structure()
        steps = stc_steps(stc, X(canceled="e"), {Kind.SWITCH_START})
        self.assertEqual(targets(steps), ["(f,∅,∅)"])
        self.assertEqual(stc_steps(stc, X(canceled="e")), [])
        self.assertEqual(
            targets(stc_steps(stc, X(canceled="e"), order=ChuOrder.ENABLING)), ["(f,∅,∅)"]
        )

    @override_settings(TRUECC_CHU4_ORDER="enabling")
    def test_enabling_order_allows_every_kind(self):
        self.assertEqual(default_kinds(), frozenset(Kind))

    def test_every_step_lands_in_the_structure(self):
        for name, build in samples.STC_SAMPLES.items():
            stc = build()
            for config in stc.sorted_configs():
                for step in stc_steps(stc, config, set(Kind)):
                    with self.subTest(name, step=str(step)):
                        self.assertIn(step.target, stc)
                        if step.kind == Kind.SWITCH_START:
                            self.assertNotIn(step.event, config.canceled)
                        if step.kind in (Kind.START, Kind.TERMINATE):
                            self.assertEqual(step.target.canceled, config.canceled)


class ProjectionTests(SimpleTestCase):
    def test_st_round_trip(self):
        for name, build in st_samples.SAMPLES.items():
            st = build()
            with self.subTest(name):
                stc = st_to_stc(st)
                self.assertTrue(all(not config.canceled for config in stc.configs))
                self.assertEqual(stc_project_st(stc), st)

    def test_angelic_and_demonic_project_to_the_same_structure(self):
        angelic, demonic = samples.gen_angelic(), samples.gen_demonic()
        self.assertNotEqual(angelic.configs, demonic.configs)
        self.assertEqual(stc_project_st(angelic).configs, stc_project_st(demonic).configs)

    def test_shutdown_backup_forgets_into_s_parallel_bstar(self):
        for k in (1, 2, 3):
            with self.subTest(k=k):
                projected = stc_project_st(samples.gen_shutdown_backup(k))
                reference = samples.gen_s_par_bstar(k)
                self.assertEqual(projected.configs, reference.configs)
                self.assertIsNotNone(st_isomorphic(projected, reference))


class ShutdownBackupTests(SimpleTestCase):
    def test_root_and_first_shutdown(self):
        stc = samples.gen_shutdown_backup(2)
        self.assertIn(STC_EMPTY, stc)
        self.assertIn(X("s", "", ["b1", "b2"]), stc)
        self.assertIn(X("b1", "b1"), stc)

    def test_backup_terminations_chain_the_levels(self):
        stc = samples.gen_shutdown_backup(3)
        for k in (1, 2):
            done = [f"b{i}" for i in range(1, k)]
            running = done + [f"b{k}"]
            with self.subTest(k=k):
                steps = stc_steps(stc, X(running, done), {Kind.TERMINATE})
                self.assertEqual([step.target for step in steps], [X(running, running)])

    def test_shutdown_during_a_backup_leaves_it_running(self):
        self.assertIn(X(["s", "b1"], "", ["b2"]), samples.gen_shutdown_backup(2))

    def test_maximal_configurations_are_finished_shutdowns(self):
        maximal = maximal_configs(samples.gen_shutdown_backup(2))
        self.assertEqual(len(maximal), 3)
        for config in maximal:
            self.assertIn("s", config.terminated)
            self.assertTrue(config.is_diagonal)

    def test_at_least_one_backup(self):
        with self.assertRaises(ValueError):
            samples.gen_shutdown_backup(0)


class TerminationTests(SimpleTestCase):
    def test_asymmetric_conflict(self):
        self.assertEqual(
            maximal_configs(samples.gen_asymmetric_conflict_stc()),
            frozenset({X("s", "s", "b"), X("bs", "bs")}),
        )

    def test_angelic(self):
        self.assertEqual(
            maximal_configs(samples.gen_angelic()),
            frozenset({X("de", "de", "f"), X("df", "df", "e")}),
        )

    def test_single_configuration(self):
        self.assertEqual(
            maximal_configs(stc_structure([("", "", "")])), frozenset({STC_EMPTY})
        )


class ChuTests(SimpleTestCase):
    def test_chu3_valuation(self):
        chu = chu3_encode(st_samples.chain())
        valuations = chu.valuations()
        self.assertIn({"a": ChuValue.TERMINATED, "b": ChuValue.RUNNING}, valuations)
        self.assertIn({"a": ChuValue.NOT_STARTED, "b": ChuValue.NOT_STARTED}, valuations)
        self.assertEqual(chu.matrix.shape, (5, 2))

    def test_chu3_decode(self):
        chu = ChuSpace.from_states(3, ["a", "b"], [{"a": "1", "b": "0"}])
        self.assertEqual(chu3_decode(chu).configs, frozenset({STConfig.of("a", "a")}))

    def test_chu4_valuations(self):
        chu = chu4_encode(samples.gen_demonic())
        symbols = [
            {event: value.label for event, value in state.items()}
            for state in chu.valuations()
        ]
        self.assertIn({"d": "⊙", "e": "✕", "f": "0"}, symbols)
        self.assertIn({"d": "1", "e": "1", "f": "✕"}, symbols)
        self.assertIn({"d": "0", "e": "0", "f": "0"}, symbols)

    def test_invalid_values(self):
        with self.assertRaises(InvalidValuation):
            ChuSpace.from_states(3, ["a"], [{"a": "✕"}])
        with self.assertRaises(InvalidValuation):
            ChuSpace.from_states(3, ["a", "b"], [{"a": "0"}])

    def test_round_trips(self):
        for name, build in st_samples.SAMPLES.items():
            with self.subTest(name):
                self.assertEqual(chu3_decode(chu3_encode(build())), build())
        for name, build in samples.STC_SAMPLES.items():
            with self.subTest(name):
                self.assertEqual(chu4_decode(chu4_encode(build())), build())
        c = config_structure(["", "a", "ab"])
        self.assertEqual(chu2_decode(chu2_encode(c)), c)

    @ACCEPTANCE_SETTINGS
    @given(st_structures())
    def test_chu3_round_trip_on_samples(self, st):
        self.assertEqual(chu3_decode(chu3_encode(st)), st)

    @ACCEPTANCE_SETTINGS
    @given(stc_structures())
    def test_chu4_round_trip_on_samples(self, stc):
        self.assertEqual(chu4_decode(chu4_encode(stc)), stc)

    @STANDARD_SETTINGS
    @given(st_structures())
    def test_chu_steps_coincide_with_st_steps(self, st):
        st_count = sum(len(steps_from(st, config)) for config in st.configs)
        self.assertEqual(len(chu_steps(chu3_encode(st))), st_count)

    def test_order(self):
        monotone = chu_order(4, ChuOrder.MONOTONE_CANCEL)
        self.assertTrue(monotone.has_edge(ChuValue.NOT_STARTED, ChuValue.CANCELED))
        self.assertFalse(monotone.has_edge(ChuValue.CANCELED, ChuValue.NOT_STARTED))
        self.assertTrue(chu_order(4, ChuOrder.ENABLING).has_edge(ChuValue.CANCELED, 0))
        self.assertEqual(chu_order(2).number_of_edges(), 1)

    def test_chu4_steps_include_cancellation(self):
        steps = chu_steps(chu4_encode(samples.gen_asymmetric_conflict_stc()))
        moves = {(step.event, step.before, step.after) for step in steps}
        self.assertIn(("s", ChuValue.RUNNING, ChuValue.TERMINATED), moves)
        self.assertNotIn(("b", ChuValue.CANCELED, ChuValue.NOT_STARTED), moves)
