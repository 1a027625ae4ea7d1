"""
Hypothesis strategies and exhaustive enumerations of small structures for property tests.
"""

from __future__ import annotations

import logging
from functools import cache
from itertools import chain, combinations, permutations
from typing import Iterator

from hypothesis import settings
from hypothesis import strategies as st

from src.core.structures import EMPTY, Event, STConfig, STStructure, validate_st
from src.stc.structures import STCConfig, STCStructure, validate_stc

__all__ = [
    "EVENT_POOL",
    "ACCEPTANCE_SETTINGS",
    "STANDARD_SETTINGS",
    "MEDIUM_SETTINGS",
    "QUICK_SETTINGS",
    "SLOW_SETTINGS",
    "all_configs",
    "powerset",
    "rooted_connected_structures",
    "exhaustive_structures",
    "config_families",
    "st_structures",
    "filled_structures",
    "stc_structures",
    "set_families",
]

logger = logging.getLogger(__name__)

EVENT_POOL = ("a", "b", "c", "d")

ACCEPTANCE_SETTINGS = settings(max_examples=1000, deadline=None)
STANDARD_SETTINGS = settings(max_examples=100, deadline=None)
MEDIUM_SETTINGS = settings(max_examples=50, deadline=None)
QUICK_SETTINGS = settings(max_examples=25, deadline=None)
SLOW_SETTINGS = settings(max_examples=10, deadline=None)


def powerset(events: list[Event]) -> list[frozenset[Event]]:
    return [
        frozenset(subset)
        for subset in chain.from_iterable(
            combinations(events, size) for size in range(len(events) + 1)
        )
    ]


def all_configs(events: list[Event]) -> list[STConfig]:
    """Every pair T ⊆ S ⊆ events, in canonical order."""

    configs = [
        STConfig(started, terminated)
        for started in powerset(events)
        for terminated in powerset(sorted(started))
    ]
    return sorted(configs, key=STConfig.sort_key)


def _growth_key(config: STConfig) -> tuple:
    return (
        len(config.started),
        sorted(config.started),
        len(config.terminated),
        sorted(config.terminated),
    )


def rooted_connected_structures(
    events: list[Event], *, up_to_renaming: bool = False
) -> Iterator[STStructure]:
    """
    Every rooted, connected ST-structure over ``events``, by depth-first search.

    Configurations are decided in an order where every predecessor and every
    configuration sharing the started set of a diagonal comes first. With
    ``up_to_renaming`` only the least member of each class under permutations
    of ``events`` is yielded.
    """

    order = sorted(all_configs(events), key=_growth_key)
    position = {config: index for index, config in enumerate(order)}
    below = [
        [position[config.unstart(event)] for event in config.running]
        + [position[config.unterminate(event)] for event in config.terminated]
        for config in order
    ]
    siblings = [
        [
            index
            for index, other in enumerate(order)
            if config.is_diagonal and other.started == config.started and other != config
        ]
        for config in order
    ]
    images = list(permutations(events)) if up_to_renaming else [tuple(events)]
    renamings = [
        [position[config.rename(dict(zip(events, image)))] for config in order]
        for image in images
    ]
    domain = frozenset(events)
    identity = {event: event for event in events}
    chosen = [False] * len(order)

    def grow(index: int, masks: tuple[int, ...]) -> Iterator[STStructure]:
        if index == len(order):
            if masks[0] == min(masks):
                configs = frozenset(config for config, kept in zip(order, chosen) if kept)
                yield STStructure(domain, configs, identity)
            return
        reachable = index == 0 or any(chosen[p] for p in below[index])
        forced = index == 0 or any(chosen[p] for p in siblings[index])
        if not forced:
            yield from grow(index + 1, masks)
        if reachable:
            chosen[index] = True
            yield from grow(
                index + 1,
                tuple(mask | 1 << renaming[index] for mask, renaming in zip(masks, renamings)),
            )
            chosen[index] = False

    yield from grow(0, (0,) * len(renamings))


@cache
def exhaustive_structures(size: int = 3) -> tuple[STStructure, ...]:
    """
    Every rooted connected structure on at most ``size`` events, one per renaming
    class, with its events cut down to those some configuration starts.
    """

    found = []
    for structure in rooted_connected_structures(
        list(EVENT_POOL[:size]), up_to_renaming=True
    ):
        used = frozenset().union(*(config.started for config in structure.configs))
        found.append(STStructure(used, structure.configs, {event: event for event in used}))
    logger.debug("Enumerated %d structures on %d events", len(found), size)
    return tuple(found)


def config_families(events: list[Event]) -> Iterator[frozenset[frozenset[Event]]]:
    """Every family of subsets of ``events`` (the configuration sets of config structures)."""

    subsets = powerset(events)
    for mask in range(2 ** len(subsets)):
        yield frozenset(subset for bit, subset in enumerate(subsets) if mask >> bit & 1)


@st.composite
def st_structures(
    draw, max_events: int = 3, max_growth: int = 12, min_events: int = 1
) -> STStructure:
    """
    Rooted connected structures grown one step at a time from (∅,∅).

    Each new configuration brings the chain of terminations leading to its
    diagonal, so the result always satisfies the ST constraint.
    """

    size = draw(st.integers(min_value=min_events, max_value=max_events))
    events = list(EVENT_POOL[:size])
    labels = {event: draw(st.sampled_from(("a", "b"))) for event in events}
    configs = {EMPTY}
    for _ in range(draw(st.integers(min_value=0, max_value=max_growth))):
        frontier = sorted(
            {
                grown
                for config in configs
                for grown in chain(
                    (config.start(event) for event in events if event not in config.started),
                    (config.terminate(event) for event in config.running),
                )
                if grown not in configs
            },
            key=STConfig.sort_key,
        )
        if not frontier:
            break
        current = draw(st.sampled_from(frontier))
        configs.add(current)
        for event in draw(st.permutations(sorted(current.running))):
            current = current.terminate(event)
            configs.add(current)
    return validate_st(events, configs, labels, mode="strict")


@st.composite
def set_families(draw, max_events: int = 3) -> tuple[list[Event], frozenset[frozenset[Event]]]:
    """A rooted family of event sets where every non-empty member has a one-smaller member."""

    size = draw(st.integers(min_value=1, max_value=max_events))
    events = list(EVENT_POOL[:size])
    family = {frozenset()}
    for _ in range(draw(st.integers(min_value=0, max_value=2**size))):
        frontier = sorted(
            {member | {event} for member in family for event in events} - family,
            key=lambda member: (len(member), sorted(member)),
        )
        if not frontier:
            break
        family.add(draw(st.sampled_from(frontier)))
    return events, frozenset(family)


@st.composite
def filled_structures(draw, max_events: int = 3) -> STStructure:
    """Adjacent-closed structures: every cube between X ⊆ Y whose in-between sets all occur."""

    events, family = draw(set_families(max_events=max_events))
    configs = {
        STConfig(upper, lower)
        for lower in family
        for upper in family
        if lower <= upper
        and all(lower | middle in family for middle in powerset(sorted(upper - lower)))
    }
    return validate_st(events, configs, {event: event for event in events}, mode="strict")


@st.composite
def stc_structures(draw, max_events: int = 3, max_configs: int = 6) -> STCStructure:
    """
    STC-structures over drawn (S, T, C) triples, each with its diagonal (S, S, C)
    and the root (∅, ∅, ∅).
    """

    size = draw(st.integers(min_value=1, max_value=max_events))
    events = list(EVENT_POOL[:size])
    labels = {event: draw(st.sampled_from(("a", "b"))) for event in events}
    configs = {STCConfig(frozenset())}
    for _ in range(draw(st.integers(min_value=0, max_value=max_configs))):
        started = draw(st.frozensets(st.sampled_from(events)))
        terminated = draw(st.frozensets(st.sampled_from(sorted(started)))) if started else started
        free = sorted(set(events) - started)
        canceled = draw(st.frozensets(st.sampled_from(free))) if free else frozenset()
        configs.add(STCConfig(started, terminated, canceled))
        configs.add(STCConfig(started, started, canceled))
    return validate_stc(events, configs, labels)
