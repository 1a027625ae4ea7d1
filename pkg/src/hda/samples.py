"""
Named HDAs used by the test suites, the fixtures and ``truecc generate``.
"""

from __future__ import annotations

from typing import Callable, Iterable

from src.core import samples as st_samples
from src.hda.cells import HDA, Cell, hda, validate_hda
from src.hda.unfolding import history_unfolding
from src.sculpting.translations import stintoh

__all__ = [
    "filled_square",
    "empty_square",
    "loop",
    "cylinder",
    "triangle",
    "open_cube",
    "open_cube_with_exits",
    "unfolded_open_cube_with_exits",
    "asymmetric_conflict",
    "asymmetric_conflict_three",
    "angelic_choice",
    "demonic_choice",
    "speed_game",
    "with_transitions",
    "HDA_SAMPLES",
]

SQUARE_EDGES = {
    "a0": (("I",), ("A",)),
    "b0": (("I",), ("B",)),
    "a1": (("B",), ("F",)),
    "b1": (("A",), ("F",)),
}
SQUARE_LABELS = {"a0": "a", "a1": "a", "b0": "b", "b1": "b"}


def filled_square() -> HDA:
    """a ‖ b: s_1 leaves a unstarted, s_2 leaves b unstarted."""

    faces = dict(SQUARE_EDGES, q=(("b0", "a0"), ("b1", "a1")))
    return hda(["I", "A", "B", "F"], faces, SQUARE_LABELS, "I", ["F"])


def empty_square() -> HDA:
    """a and b interleaved."""

    return hda(["I", "A", "B", "F"], SQUARE_EDGES, SQUARE_LABELS, "I", ["F"])


def loop() -> HDA:
    return hda(["I"], {"x": (("I",), ("I",))}, {"x": "a"}, "I")


def cylinder() -> HDA:
    """s ‖ b*: the square's b-edges are loops on both ends of the s-transition."""

    faces = {
        "s0": (("I",), ("J",)),
        "b0": (("I",), ("I",)),
        "b1": (("J",), ("J",)),
        "q": (("s0", "b0"), ("s0", "b1")),
    }
    return hda(["I", "J"], faces, {"s0": "s", "b0": "b", "b1": "b"}, "I")


def triangle() -> HDA:
    """The end state is reached either by c alone or by a followed by b."""

    faces = {"a0": (("I",), ("M",)), "b0": (("M",), ("F",)), "c0": (("I",), ("F",))}
    return hda(["I", "M", "F"], faces, {"a0": "a", "b0": "b", "c0": "c"}, "I", ["F"])


def open_cube() -> HDA:
    """Three concurrent events without the cube interior and without the b‖c face at a=0."""

    def allowed(state) -> bool:
        return not (
            state["b"] == st_samples.RUNNING
            and state["c"] == st_samples.RUNNING
            and state["a"] != st_samples.TERMINATED
        )

    return stintoh(st_samples.from_valuations(["a", "b", "c"], allowed))


def with_transitions(h: HDA, transitions: Iterable[tuple[Cell, Cell, Cell, str]]) -> HDA:
    """Attach ``(id, source, target, label)`` transitions, creating missing target states."""

    dims, sources, targets = dict(h.dims), dict(h.sources), dict(h.targets)
    labeling = dict(h.labeling)
    for cell, source, target, label in transitions:
        dims.setdefault(target, 0)
        dims[cell] = 1
        sources[(cell, 1)] = source
        targets[(cell, 1)] = target
        labeling[cell] = label
    return validate_hda(HDA(dims, sources, targets, labeling, h.initial, h.finals))


def open_cube_with_exits() -> HDA:
    """The open cube with a d-exit and an e-exit on the corner where b and c are done."""

    corner = "(bc,bc)"
    return with_transitions(open_cube(), [("d", corner, "Xd", "d"), ("e", corner, "Xe", "e")])


def unfolded_open_cube_with_exits() -> HDA:
    """The unfolded open cube, with one exit on each copy of the split corner."""

    return with_transitions(
        history_unfolding(open_cube()),
        [("d", "(bc,bc)#1", "Xd", "d"), ("e", "(bc,bc)#2", "Xe", "e")],
    )


def asymmetric_conflict() -> HDA:
    return stintoh(st_samples.asymmetric_conflict())


def asymmetric_conflict_three() -> HDA:
    return stintoh(st_samples.asymmetric_conflict_three())


def angelic_choice() -> HDA:
    """d, then a late choice between e and f."""

    faces = {"d0": (("I",), ("D",)), "e0": (("D",), ("E",)), "f0": (("D",), ("F",))}
    return hda(["I", "D", "E", "F"], faces, {"d0": "d", "e0": "e", "f0": "f"}, "I", ["E", "F"])


def demonic_choice() -> HDA:
    """The choice between e and f is made when d starts."""

    faces = {
        "d1": (("I",), ("D1",)),
        "d2": (("I",), ("D2",)),
        "e0": (("D1",), ("E",)),
        "f0": (("D2",), ("F",)),
    }
    labels = {"d1": "d", "d2": "d", "e0": "e", "f0": "f"}
    return hda(["I", "D1", "D2", "E", "F"], faces, labels, "I", ["E", "F"])


def speed_game() -> HDA:
    """
    Angel a and demon d run together in one of two squares sharing their
    start edges; the angel's square ends in g, the demon's in e.
    """

    faces = {
        "a0": (("I",), ("A",)),
        "d0": (("I",), ("D",)),
        "d1": (("A",), ("F1",)),
        "a1": (("D",), ("F1",)),
        "d2": (("A",), ("F2",)),
        "a2": (("D",), ("F2",)),
        "angel": (("d0", "a0"), ("d1", "a1")),
        "demon": (("d0", "a0"), ("d2", "a2")),
        "g0": (("F1",), ("G",)),
        "e0": (("F2",), ("E",)),
    }
    labels = {"a0": "a", "a1": "a", "a2": "a", "d0": "d", "d1": "d", "d2": "d"}
    labels.update(g0="g", e0="e")
    states = ["I", "A", "D", "F1", "F2", "G", "E"]
    return hda(states, faces, labels, "I", ["G", "E"])


HDA_SAMPLES: dict[str, Callable[[], HDA]] = {
    "hda-filled-square": filled_square,
    "hda-empty-square": empty_square,
    "hda-loop": loop,
    "hda-cylinder": cylinder,
    "hda-triangle": triangle,
    "hda-open-cube": open_cube,
    "hda-open-cube-exits": open_cube_with_exits,
    "hda-open-cube-unfolded-exits": unfolded_open_cube_with_exits,
    "hda-asymmetric-conflict": asymmetric_conflict,
    "hda-asymmetric-conflict-3": asymmetric_conflict_three,
    "angelic-choice": angelic_choice,
    "demonic-choice": demonic_choice,
    "speed-game": speed_game,
}
