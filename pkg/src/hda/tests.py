from django.test import SimpleTestCase

from src.core import samples as st_samples
from src.core.exceptions import (
    CellNotFound,
    CubicalLawViolation,
    CyclicInput,
    LabelMismatch,
    NoInitial,
    PartialMap,
    PreconditionViolated,
)
from src.hda import samples
from src.hda.bisimulation import hda_hh_bisimilar, signed_label
from src.hda.cells import (
    hda,
    hda_step_graph,
    is_acyclic,
    is_non_degenerate,
    require_well_behaved,
)
from src.hda.models import FaceMap, NonDegeneracyRule
from src.hda.morphisms import hda_isomorphic, hda_morphism_check
from src.hda.paths import (
    HDAPath,
    HDAStep,
    adjacent,
    adjacent_paths,
    face_path,
    hda_paths,
    homotopy_class,
    rooted_histories,
    rooted_paths,
)
from src.hda.unfolding import history_unfolding
from src.sculpting.translations import stintoh

S, T = FaceMap.SOURCE, FaceMap.TARGET


def square_faces(**overrides):
    faces = dict(samples.SQUARE_EDGES, q=(("b0", "a0"), ("b1", "a1")))
    faces.update(overrides)
    return faces


def walk(start, *steps):
    """``walk("I", ("a0", S, 1), ...)``: each step names the cell it moves to."""

    path = HDAPath(start)
    for target, kind, index in steps:
        path = path.extend(HDAStep(path.end, target, kind, index))
    return path


class ValidationTests(SimpleTestCase):
    def test_filled_square(self):
        h = samples.filled_square()
        self.assertEqual(len(h), 9)
        self.assertEqual(h.max_dim, 2)
        self.assertEqual(h.cells(1), ["a0", "a1", "b0", "b1"])
        self.assertEqual(h.s("q", 1), "b0")
        self.assertEqual(h.t("q", 2), "a1")

    def test_event_labels_of_the_square(self):
        h = samples.filled_square()
        self.assertEqual(h.event_label("q", 1), "a")
        self.assertEqual(h.event_label("q", 2), "b")

    def test_broken_cubical_law(self):
        faces = square_faces(q=(("b0", "a0"), ("a1", "b1")))
        with self.assertRaises(CubicalLawViolation):
            hda(["I", "A", "B", "F"], faces, samples.SQUARE_LABELS, "I")

    def test_label_mismatch(self):
        labels = dict(samples.SQUARE_LABELS, a1="c")
        with self.assertRaises(LabelMismatch):
            hda(["I", "A", "B", "F"], square_faces(), labels, "I")

    def test_missing_initial_state(self):
        with self.assertRaises(NoInitial):
            hda(["I"], {}, {}, "X")

    def test_unknown_face(self):
        with self.assertRaises(CellNotFound):
            hda(["I"], {"x": (("I",), ("Z",))}, {"x": "a"}, "I")

    def test_partial_maps_need_leniency(self):
        faces = square_faces(q=(("b0", "a0"), ("b1", None)))
        with self.assertRaises(PartialMap):
            hda(["I", "A", "B", "F"], faces, samples.SQUARE_LABELS, "I")
        h = hda(["I", "A", "B", "F"], faces, samples.SQUARE_LABELS, "I", lenient=True)
        self.assertTrue(h.degenerate)
        ok, witness = is_non_degenerate(h)
        self.assertFalse(ok)
        self.assertEqual(witness.rule, NonDegeneracyRule.MISSING_FACE)
        with self.assertRaises(PreconditionViolated):
            require_well_behaved(h)

    def test_unreachable_cells_are_pruned(self):
        with self.assertLogs("src.hda.cells", "WARNING"):
            h = hda(["I", "Z"], {"x": (("I",), ("I",))}, {"x": "a"}, "I")
        self.assertNotIn("Z", h)

    def test_step_graph(self):
        graph = hda_step_graph(samples.filled_square())
        self.assertEqual(graph.number_of_nodes(), 9)
        self.assertEqual(graph.number_of_edges(), 12)
        self.assertTrue(graph.has_edge("a0", "q"))
        self.assertTrue(graph.has_edge("q", "b1"))


class PropertyTests(SimpleTestCase):
    def test_acyclicity(self):
        self.assertEqual(is_acyclic(samples.filled_square()), (True, ()))
        ok, cycle = is_acyclic(samples.loop())
        self.assertFalse(ok)
        self.assertEqual(set(cycle), {"I", "x"})
        self.assertFalse(is_acyclic(samples.cylinder())[0])

    def test_cyclic_input_is_refused(self):
        with self.assertRaises(PreconditionViolated):
            require_well_behaved(samples.loop())
        require_well_behaved(samples.loop(), acyclic=False)
        with self.assertRaises(CyclicInput):
            rooted_paths(samples.cylinder())

    def test_parallel_transitions_are_degenerate(self):
        faces = {"x": (("I",), ("A",)), "y": (("I",), ("A",))}
        h = hda(["I", "A"], faces, {"x": "a", "y": "a"}, "I")
        ok, witness = is_non_degenerate(h)
        self.assertFalse(ok)
        self.assertEqual(witness.rule, NonDegeneracyRule.PARALLEL_TRANSITIONS)
        self.assertEqual(witness.cells, ("x", "y"))

    def test_samples_are_well_behaved(self):
        for name, build in samples.HDA_SAMPLES.items():
            if name in ("hda-loop", "hda-cylinder"):
                continue
            with self.subTest(name):
                require_well_behaved(build())


class PathTests(SimpleTestCase):
    def test_path_counts(self):
        self.assertEqual(len(hda_paths(samples.filled_square(), "I", "F")), 6)
        self.assertEqual(len(hda_paths(samples.empty_square(), "I", "F")), 2)
        self.assertEqual(hda_paths(samples.filled_square(), "I", "I"), [HDAPath("I")])
        self.assertEqual(hda_paths(samples.filled_square(), "F", "I"), [])

    def test_unknown_endpoint(self):
        with self.assertRaises(CellNotFound):
            hda_paths(samples.filled_square(), "I", "nowhere")

    def test_paths_on_a_loop_are_cut(self):
        self.assertEqual(len(hda_paths(samples.loop(), "I", "I")), 2)

    def test_steps_must_be_contiguous(self):
        with self.assertRaises(ValueError):
            HDAPath("I", (HDAStep("A", "b1", S, 1),))

    def test_adjacent_through_the_square(self):
        h = samples.filled_square()
        through_b = walk("I", ("b0", S, 1), ("q", S, 1), ("b1", T, 1), ("F", T, 1))
        through_a = walk("I", ("a0", S, 1), ("q", S, 2), ("b1", T, 1), ("F", T, 1))
        self.assertEqual(adjacent(h, through_b, through_a), 1)
        self.assertEqual(adjacent(h, through_a, through_b), 1)
        positions = sorted(position for position, _ in adjacent_paths(h, through_b))
        self.assertEqual(positions, [1, 3])

    def test_interleaving_is_adjacent_to_the_square(self):
        h = samples.filled_square()
        around = walk("I", ("a0", S, 1), ("A", T, 1), ("b1", S, 1), ("F", T, 1))
        inside = walk("I", ("a0", S, 1), ("q", S, 2), ("b1", T, 1), ("F", T, 1))
        self.assertEqual(adjacent(h, around, inside), 2)
        self.assertIsNone(adjacent(h, around, around))

    def test_homotopy(self):
        filled, empty = samples.filled_square(), samples.empty_square()
        self.assertEqual(len(homotopy_class(filled, hda_paths(filled, "I", "F")[0])), 6)
        for path in hda_paths(empty, "I", "F"):
            self.assertEqual(len(homotopy_class(empty, path)), 1)

    def test_histories(self):
        self.assertEqual(len(rooted_histories(samples.filled_square())["F"]), 1)
        self.assertEqual(len(rooted_histories(samples.empty_square())["F"]), 2)
        self.assertEqual(len(rooted_histories(samples.triangle())["F"]), 2)

    def test_face_path(self):
        h = samples.filled_square()
        into_square = walk("I", ("b0", S, 1), ("q", S, 1))
        self.assertEqual(face_path(h, into_square, S, 1), walk("I", ("b0", S, 1)))
        self.assertEqual(face_path(h, into_square, S, 2), walk("I", ("a0", S, 1)))
        self.assertEqual(face_path(h, into_square, T, 2).end, "a1")

    def test_rooted_paths_include_prefixes(self):
        paths = rooted_paths(samples.triangle())
        self.assertIn(HDAPath("I"), paths)
        self.assertEqual(len(paths), len(set(paths)))
        self.assertTrue(all(path.prefix in paths for path in paths if path.steps))


class UnfoldingTests(SimpleTestCase):
    def test_triangle_splits_its_end(self):
        unfolded = history_unfolding(samples.triangle())
        self.assertNotIn("F", unfolded)
        self.assertIn("F#1", unfolded)
        self.assertIn("F#2", unfolded)
        self.assertEqual(unfolded.finals, frozenset({"F#1", "F#2"}))

    def test_unfolding_keeps_a_filled_square(self):
        h = samples.filled_square()
        self.assertIsNotNone(hda_isomorphic(history_unfolding(h), h))

    def test_open_cube_splits_the_corner(self):
        with self.assertLogs("src.hda.unfolding", "INFO"):
            unfolded = history_unfolding(samples.open_cube())
        self.assertIn("(bc,bc)#1", unfolded)
        self.assertIn("(bc,bc)#2", unfolded)
        ok, _ = is_non_degenerate(unfolded)
        self.assertTrue(ok)

    def test_unfolding_needs_an_acyclic_input(self):
        with self.assertRaises(PreconditionViolated):
            history_unfolding(samples.cylinder())


class MorphismTests(SimpleTestCase):
    def test_isomorphic_to_the_translated_square(self):
        iso = hda_isomorphic(samples.filled_square(), stintoh(st_samples.filled_square()))
        self.assertIsNotNone(iso)
        self.assertTrue(iso.is_injective)
        self.assertEqual(iso["I"], "(∅,∅)")

    def test_squares_are_not_isomorphic(self):
        self.assertIsNone(hda_isomorphic(samples.filled_square(), samples.empty_square()))

    def test_asymmetric_conflicts_have_isomorphic_translations(self):
        self.assertIsNotNone(
            hda_isomorphic(samples.asymmetric_conflict(), samples.asymmetric_conflict_three())
        )

    def test_morphism_check(self):
        h = samples.filled_square()
        identity = {cell: cell for cell in h.cells()}
        self.assertTrue(hda_morphism_check(identity, h, h))
        swapped = dict(identity, a0="b0", b0="a0")
        self.assertFalse(hda_morphism_check(swapped, h, h))


class BisimulationTests(SimpleTestCase):
    def test_signed_labels(self):
        h = samples.filled_square()
        self.assertEqual(signed_label(h, HDAStep("b0", "q", S, 1)), "a+")
        self.assertEqual(signed_label(h, HDAStep("q", "b1", T, 1)), "a-")

    def test_square_is_bisimilar_to_itself(self):
        h = samples.filled_square()
        result = hda_hh_bisimilar(h, h)
        self.assertTrue(result)
        self.assertIn((HDAPath("I"), HDAPath("I")), result.relation)

    def test_triangle_and_its_unfolding(self):
        h = samples.triangle()
        self.assertTrue(hda_hh_bisimilar(h, history_unfolding(h)))

    def test_concurrency_is_not_interleaving(self):
        result = hda_hh_bisimilar(samples.filled_square(), samples.empty_square())
        self.assertFalse(result)
        self.assertTrue(result.distinguishing)

    def test_open_cube_exits(self):
        result = hda_hh_bisimilar(
            samples.open_cube_with_exits(), samples.unfolded_open_cube_with_exits()
        )
        self.assertFalse(result)
        self.assertEqual(result.as_json()["mode"], "hh")
