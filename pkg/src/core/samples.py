"""
Named ST-structures used across the test suites, the fixtures and ``truecc generate``.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Mapping

from src.core.structures import Event, Label, STConfig, STStructure, structure

__all__ = [
    "NOT_STARTED",
    "RUNNING",
    "TERMINATED",
    "from_valuations",
    "single_event",
    "filled_square",
    "empty_square",
    "triangle",
    "chain",
    "choice",
    "parallel_switch",
    "resolved_conflict",
    "asymmetric_conflict",
    "asymmetric_conflict_three",
    "SAMPLES",
]

NOT_STARTED, RUNNING, TERMINATED = 0, 1, 2


def from_valuations(
    events: list[Event],
    allowed: Callable[[Mapping[Event, int]], bool],
    labels: Mapping[Event, Label] | None = None,
) -> STStructure:
    """Every ST-configuration over ``events`` whose per-event state passes ``allowed``."""

    configs = []
    for values in product((NOT_STARTED, RUNNING, TERMINATED), repeat=len(events)):
        state = dict(zip(events, values))
        if allowed(state):
            configs.append(
                STConfig.of(
                    (event for event, value in state.items() if value != NOT_STARTED),
                    (event for event, value in state.items() if value == TERMINATED),
                )
            )
    return structure(configs, labels, events=events)


def single_event(label: Label = "a") -> STStructure:
    return structure([("", ""), ("a", ""), ("a", "a")], {"a": label})


def filled_square() -> STStructure:
    """a and b fully concurrent."""

    return from_valuations(["a", "b"], lambda state: True)


def empty_square() -> STStructure:
    """a and b interleaved: the filled square without (ab,∅)."""

    return from_valuations(
        ["a", "b"], lambda state: not (state["a"] == RUNNING and state["b"] == RUNNING)
    )


def triangle() -> STStructure:
    """a always starts and terminates before b; stable but not adjacent-closed."""

    return structure(
        [("", ""), ("a", ""), ("a", "a"), ("ab", ""), ("ab", "a"), ("ab", "ab")],
    )


def chain() -> STStructure:
    """a causes b."""

    return structure([("", ""), ("a", ""), ("a", "a"), ("ab", "a"), ("ab", "ab")])


def choice() -> STStructure:
    """a or b, never both."""

    return structure([("", ""), ("a", ""), ("a", "a"), ("b", ""), ("b", "b")])


def parallel_switch() -> STStructure:
    """Light bulb b needs either switch 0 or switch 1 to have closed."""

    return from_valuations(
        ["0", "1", "b"],
        lambda state: state["b"] == NOT_STARTED
        or TERMINATED in (state["0"], state["1"]),
    )


def resolved_conflict() -> STStructure:
    """a and b conflict until c has terminated."""

    return from_valuations(
        ["a", "b", "c"],
        lambda state: state["a"] == NOT_STARTED
        or state["b"] == NOT_STARTED
        or state["c"] == TERMINATED,
    )


def asymmetric_conflict() -> STStructure:
    """Once s has happened b is no longer possible."""

    return structure(
        [("", ""), ("b", ""), ("b", "b"), ("s", ""), ("s", "s"), ("bs", "b"), ("bs", "bs")],
    )


def asymmetric_conflict_three() -> STStructure:
    """The same behaviour with the late s represented by a second s-labelled event f."""

    return structure(
        [("", ""), ("b", ""), ("b", "b"), ("s", ""), ("s", "s"), ("bf", "b"), ("bf", "bf")],
        {"f": "s"},
    )


SAMPLES: dict[str, Callable[[], STStructure]] = {
    "single-event": single_event,
    "filled-square": filled_square,
    "empty-square": empty_square,
    "triangle": triangle,
    "chain": chain,
    "choice": choice,
    "winskel": parallel_switch,
    "resolved-conflict": resolved_conflict,
    "asymmetric-conflict": asymmetric_conflict,
    "asymmetric-conflict-3": asymmetric_conflict_three,
}
