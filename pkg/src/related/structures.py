"""
Configuration structures and inpure event structures with their asynchronous steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from src.core.exceptions import UndeclaredEvent
from src.core.structures import Event, Label, format_events

__all__ = [
    "ConfigStructure",
    "InpureEventStructure",
    "AsyncStep",
    "ConfigProperties",
    "subsets",
    "set_key",
    "config_structure",
    "event_structure",
    "config_properties",
    "config_steps",
    "async_steps_config",
    "left_closed_configs",
    "async_steps_event",
]


def subsets(events: Iterable[Event]) -> list[frozenset[Event]]:
    ordered = sorted(events)
    return [
        frozenset(subset)
        for subset in chain.from_iterable(
            combinations(ordered, size) for size in range(len(ordered) + 1)
        )
    ]


def set_key(events: frozenset[Event]) -> tuple[int, list[Event]]:
    return (len(events), sorted(events))


def _freeze_labels(labeling: Mapping[Event, Label], events: frozenset[Event]) -> MappingProxyType:
    labels = dict(labeling)
    for event in sorted(labels):
        if event not in events:
            raise UndeclaredEvent(event=event)
    for event in events:
        labels.setdefault(event, event)
    return MappingProxyType(labels)


@dataclass(frozen=True)
class ConfigStructure:
    events: frozenset[Event]
    configs: frozenset[frozenset[Event]]
    labeling: Mapping[Event, Label] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "labeling", _freeze_labels(self.labeling, self.events))
        for config in sorted(self.configs, key=set_key):
            undeclared = config - self.events
            if undeclared:
                raise UndeclaredEvent(event=min(undeclared))

    def __contains__(self, config: object) -> bool:
        return config in self.configs

    def sorted_configs(self) -> list[frozenset[Event]]:
        return sorted(self.configs, key=set_key)

    def __str__(self) -> str:
        return "{" + ", ".join(format_events(config) for config in self.sorted_configs()) + "}"


@dataclass(frozen=True)
class InpureEventStructure:
    """Events with an explicit enabling relation of pairs (Z, Y), read Z enables Y."""

    events: frozenset[Event]
    enabling: frozenset[tuple[frozenset[Event], frozenset[Event]]]
    labeling: Mapping[Event, Label] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "labeling", _freeze_labels(self.labeling, self.events))
        for enabler, enabled in self.enabling:
            undeclared = (enabler | enabled) - self.events
            if undeclared:
                raise UndeclaredEvent(event=min(undeclared))

    def enables(self, enabler: frozenset[Event], enabled: frozenset[Event]) -> bool:
        return (enabler, enabled) in self.enabling

    def sorted_enabling(self) -> list[tuple[frozenset[Event], frozenset[Event]]]:
        return sorted(self.enabling, key=lambda pair: (set_key(pair[0]), set_key(pair[1])))


@dataclass(frozen=True)
class AsyncStep:
    source: frozenset[Event]
    target: frozenset[Event]

    @property
    def is_reflexive(self) -> bool:
        return self.source == self.target

    def __str__(self) -> str:
        return f"{format_events(self.source)}->{format_events(self.target)}"


def config_structure(
    configs: Iterable[Iterable[Event]],
    labels: Mapping[Event, Label] | None = None,
    *,
    events: Iterable[Event] | None = None,
) -> ConfigStructure:
    configs = frozenset(frozenset(config) for config in configs)
    if events is None:
        events = frozenset().union(*configs) | set(labels or {})
    return ConfigStructure(frozenset(events), configs, labels or {})


def event_structure(
    enabling: Iterable[tuple[Iterable[Event], Iterable[Event]]],
    labels: Mapping[Event, Label] | None = None,
    *,
    events: Iterable[Event] | None = None,
) -> InpureEventStructure:
    pairs = frozenset((frozenset(enabler), frozenset(enabled)) for enabler, enabled in enabling)
    if events is None:
        events = frozenset().union(*(z | y for z, y in pairs)) | set(labels or {})
    return InpureEventStructure(frozenset(events), pairs, labels or {})


@dataclass(frozen=True)
class ConfigProperties:
    rooted: bool
    connected: bool
    closed_bounded_unions: bool
    closed_bounded_intersections: bool

    @property
    def stable(self) -> bool:
        return (
            self.rooted
            and self.connected
            and self.closed_bounded_unions
            and self.closed_bounded_intersections
        )

    def first_failure(self) -> str | None:
        flags = ("rooted", "connected", "closed_bounded_unions", "closed_bounded_intersections")
        for flag in flags:
            if not getattr(self, flag):
                return flag
        return None


def config_properties(c: ConfigStructure) -> ConfigProperties:
    configs = c.sorted_configs()
    connected = all(
        any(config - {event} in c for event in config) for config in configs if config
    )
    unions = intersections = True
    for left, right in combinations(configs, 2):
        if not any(left | right <= bound for bound in configs):
            continue
        unions = unions and (left | right) in c
        intersections = intersections and (left & right) in c
    return ConfigProperties(frozenset() in c, connected, unions, intersections)


def config_steps(c: ConfigStructure) -> Iterator[tuple[frozenset[Event], Event, frozenset[Event]]]:
    """Single-event steps X -> X ∪ {e} between configurations."""

    for config in c.sorted_configs():
        for event in sorted(c.events - config):
            if config | {event} in c:
                yield config, event, config | {event}


def async_steps_config(c: ConfigStructure) -> list[AsyncStep]:
    """Steps X -> Y with every set between X and Y a configuration, reflexive ones included."""

    steps = []
    for source in c.sorted_configs():
        for target in c.sorted_configs():
            if source <= target and all(
                source | middle in c for middle in subsets(target - source)
            ):
                steps.append(AsyncStep(source, target))
    return steps


def _enabled_from(e: InpureEventStructure, source: frozenset[Event], target_subset) -> bool:
    return any(e.enables(enabler, target_subset) for enabler in subsets(source))


def left_closed_configs(e: InpureEventStructure) -> list[frozenset[Event]]:
    """Sets X such that every subset of X is enabled by some subset of X."""

    return [
        candidate
        for candidate in sorted(subsets(e.events), key=set_key)
        if all(_enabled_from(e, candidate, part) for part in subsets(candidate))
    ]


def async_steps_event(e: InpureEventStructure) -> list[AsyncStep]:
    configs = left_closed_configs(e)
    steps = []
    for source in configs:
        for target in configs:
            if source <= target and all(
                _enabled_from(e, source, part) for part in subsets(target)
            ):
                steps.append(AsyncStep(source, target))
    return steps
