"""
Structural properties of ST-structures.

Each property has an ``iter_*_violations`` generator yielding violations in
canonical order (configuration dimension, then lexicographic), so the first
one is the minimal witness reported by the boolean checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterator, Mapping

from src.core.models import ClosureRule
from src.core.structures import EMPTY, Event, STConfig, STStructure

__all__ = [
    "Violation",
    "PropertyReport",
    "property_report",
    "is_rooted",
    "is_connected",
    "closed_under_bounded_unions",
    "closed_under_bounded_intersections",
    "is_stable",
    "is_adjacent_closed",
    "closed_under_single_events",
    "iter_connectivity_violations",
    "iter_union_violations",
    "iter_intersection_violations",
    "iter_adjacency_violations",
    "iter_single_event_violations",
    "predecessors",
]


@dataclass(frozen=True)
class Violation:
    """Configurations witnessing a failed property, plus what is missing."""

    configs: tuple[STConfig, ...] = ()
    missing: STConfig | None = None
    rule: int | None = None
    event: Event | None = None

    def as_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"configs": [str(config) for config in self.configs]}
        if self.missing is not None:
            payload["missing"] = str(self.missing)
        if self.rule is not None:
            payload["rule"] = int(self.rule)
        if self.event is not None:
            payload["event"] = self.event
        return payload


@dataclass(frozen=True)
class PropertyReport:
    rooted: bool
    connected: bool
    closed_bounded_unions: bool
    closed_bounded_intersections: bool
    stable: bool
    adjacent_closed: bool
    closed_single_events: bool
    witnesses: Mapping[str, Violation] = field(default_factory=dict)
    mode: str = "strict"

    FLAGS = (
        "rooted",
        "connected",
        "closed_bounded_unions",
        "closed_bounded_intersections",
        "stable",
        "adjacent_closed",
        "closed_single_events",
    )

    def as_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {flag: getattr(self, flag) for flag in self.FLAGS}
        payload["mode"] = str(self.mode)
        payload["witnesses"] = {
            name: witness.as_json() for name, witness in sorted(self.witnesses.items())
        }
        return payload


def _first(violations: Iterator[Violation]) -> Violation | None:
    return next(violations, None)


def predecessors(st: STStructure, config: STConfig) -> list[STConfig]:
    """Configurations of ``st`` one single step below ``config``."""

    found = [config.unstart(event) for event in sorted(config.running)]
    found += [config.unterminate(event) for event in sorted(config.terminated)]
    return [candidate for candidate in found if candidate in st]


def is_rooted(st: STStructure) -> bool:
    return EMPTY in st


def iter_connectivity_violations(st: STStructure) -> Iterator[Violation]:
    """
    Non-empty configurations with no configuration one step below them.

    Removing a started event that is also terminated never gives an
    ST-configuration, so only running events are candidates for unstarting.
    """

    for config in st.sorted_configs():
        if config.dimension and not predecessors(st, config):
            yield Violation(configs=(config,))


def is_connected(st: STStructure) -> bool:
    return _first(iter_connectivity_violations(st)) is None


def _bounding(st: STStructure, config: STConfig) -> STConfig | None:
    for candidate in st.sorted_configs():
        if config.issubset(candidate):
            return candidate
    return None


def _iter_bounded_pairs(st: STStructure) -> Iterator[tuple[STConfig, STConfig, STConfig]]:
    ordered = st.sorted_configs()
    for left, right in combinations(ordered, 2):
        bound = _bounding(st, left.union(right))
        if bound is not None:
            yield left, right, bound


def iter_union_violations(st: STStructure) -> Iterator[Violation]:
    for left, right, bound in _iter_bounded_pairs(st):
        union = left.union(right)
        if union not in st:
            yield Violation(configs=(left, right, bound), missing=union)


def iter_intersection_violations(st: STStructure) -> Iterator[Violation]:
    for left, right, bound in _iter_bounded_pairs(st):
        meet = left.intersection(right)
        if meet not in st:
            yield Violation(configs=(left, right, bound), missing=meet)


def closed_under_bounded_unions(st: STStructure) -> bool:
    return _first(iter_union_violations(st)) is None


def closed_under_bounded_intersections(st: STStructure) -> bool:
    return _first(iter_intersection_violations(st)) is None


def is_stable(st: STStructure) -> bool:
    return (
        is_rooted(st)
        and is_connected(st)
        and closed_under_bounded_unions(st)
        and closed_under_bounded_intersections(st)
    )


def _pairs(events: list[Event], exclude: frozenset[Event]) -> Iterator[tuple[Event, Event]]:
    free = [event for event in events if event not in exclude]
    for first in free:
        for second in free:
            if first != second:
                yield first, second


def iter_adjacency_violations(st: STStructure) -> Iterator[Violation]:
    """Instances of the four adjacent-closure rules whose conclusion is absent."""

    events = st.sorted_events()
    for base in st.sorted_configs():
        started, terminated = base.started, base.terminated

        for e, f in _pairs(events, started):
            one, both = base.start(e), base.start(e).start(f)
            if one in st and both in st and base.start(f) not in st:
                yield Violation((base, one, both), base.start(f), ClosureRule.START_START)

        for e in events:
            if e in started:
                continue
            one = base.start(e)
            if one not in st:
                continue
            for f in events:
                if f in terminated or f == e:
                    continue
                late = one.terminate(f)
                if late in st and base.terminate(f) not in st:
                    yield Violation(
                        (base, one, late), base.terminate(f), ClosureRule.START_TERMINATE_LATE
                    )
                early = base.terminate(f)
                if early.is_well_formed and early in st and late not in st:
                    yield Violation((base, one, early), late, ClosureRule.START_TERMINATE_EARLY)

        for e, f in _pairs(events, terminated):
            one, both = base.terminate(e), base.terminate(e).terminate(f)
            if one in st and both in st and base.terminate(f) not in st:
                yield Violation(
                    (base, one, both), base.terminate(f), ClosureRule.TERMINATE_TERMINATE
                )


def is_adjacent_closed(st: STStructure) -> tuple[bool, Violation | None]:
    witness = _first(iter_adjacency_violations(st))
    return witness is None, witness


def iter_single_event_violations(st: STStructure) -> Iterator[Violation]:
    """
    Running events that cannot be terminated, or cannot be unstarted, in place.

    Per configuration the termination condition is checked for every running
    event before the unstart condition.
    """

    for config in st.sorted_configs():
        running = sorted(config.running)
        for event in running:
            if config.terminate(event) not in st:
                yield Violation((config,), config.terminate(event), event=event)
        for event in running:
            if config.unstart(event) not in st:
                yield Violation((config,), config.unstart(event), event=event)


def closed_under_single_events(st: STStructure) -> tuple[bool, Violation | None]:
    witness = _first(iter_single_event_violations(st))
    return witness is None, witness


def property_report(st: STStructure) -> PropertyReport:
    """Compute every structural flag with its minimal witness."""

    witnesses: dict[str, Violation] = {}
    rooted = is_rooted(st)
    if not rooted:
        witnesses["rooted"] = Violation(missing=EMPTY)

    checks = {
        "connected": iter_connectivity_violations,
        "closed_bounded_unions": iter_union_violations,
        "closed_bounded_intersections": iter_intersection_violations,
        "adjacent_closed": iter_adjacency_violations,
        "closed_single_events": iter_single_event_violations,
    }
    flags: dict[str, bool] = {}
    for name, check in checks.items():
        witness = _first(check(st))
        flags[name] = witness is None
        if witness is not None:
            witnesses[name] = witness

    stable = (
        rooted
        and flags["connected"]
        and flags["closed_bounded_unions"]
        and flags["closed_bounded_intersections"]
    )
    return PropertyReport(
        rooted=rooted,
        stable=stable,
        witnesses=witnesses,
        mode=st.mode,
        **flags,
    )
