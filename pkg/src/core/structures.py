"""
ST-configurations and ST-structures.

Values are immutable and stored canonically (event sets as frozensets, ids as
strings), so every enumeration below can sort deterministically by
``STConfig.sort_key``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from django.conf import settings

from src.core.exceptions import ConstraintTnotSubsetS, MissingClosure, UndeclaredEvent
from src.core.models import ValidationMode

logger = logging.getLogger(__name__)

__all__ = [
    "Event",
    "Label",
    "STConfig",
    "STStructure",
    "EMPTY",
    "format_events",
    "validate_st",
    "structure",
]

Event = str
Label = str


def format_events(events: Iterable[Event]) -> str:
    """Render an event set the way the examples print it: ``ab``, ``01b``, ``∅``."""

    ordered = sorted(events)
    if not ordered:
        return "∅"
    if all(len(event) == 1 for event in ordered):
        return "".join(ordered)
    return "{" + ",".join(ordered) + "}"


@dataclass(frozen=True)
class STConfig:
    """A pair (S, T) of started and terminated events."""

    started: frozenset[Event]
    terminated: frozenset[Event] = frozenset()

    @classmethod
    def of(cls, started: Iterable[Event] = (), terminated: Iterable[Event] = ()) -> STConfig:
        """Build from any iterables; a plain string contributes one event per character."""

        return cls(frozenset(started), frozenset(terminated))

    @property
    def dimension(self) -> int:
        return len(self.started) + len(self.terminated)

    @property
    def running(self) -> frozenset[Event]:
        """Events started but not terminated (S minus T)."""

        return self.started - self.terminated

    @property
    def is_diagonal(self) -> bool:
        return self.started == self.terminated

    @property
    def is_well_formed(self) -> bool:
        return self.terminated <= self.started

    @property
    def diagonal(self) -> STConfig:
        return STConfig(self.started, self.started)

    @property
    def events(self) -> frozenset[Event]:
        return self.started | self.terminated

    def sort_key(self) -> tuple:
        return (self.dimension, sorted(self.started), sorted(self.terminated))

    def issubset(self, other: STConfig) -> bool:
        return self.started <= other.started and self.terminated <= other.terminated

    def union(self, other: STConfig) -> STConfig:
        return STConfig(self.started | other.started, self.terminated | other.terminated)

    def intersection(self, other: STConfig) -> STConfig:
        return STConfig(self.started & other.started, self.terminated & other.terminated)

    def start(self, event: Event) -> STConfig:
        return STConfig(self.started | {event}, self.terminated)

    def terminate(self, event: Event) -> STConfig:
        return STConfig(self.started, self.terminated | {event})

    def unstart(self, event: Event) -> STConfig:
        return STConfig(self.started - {event}, self.terminated)

    def unterminate(self, event: Event) -> STConfig:
        return STConfig(self.started, self.terminated - {event})

    def rename(self, mapping: Mapping[Event, Event]) -> STConfig:
        return STConfig(
            frozenset(mapping[event] for event in self.started),
            frozenset(mapping[event] for event in self.terminated),
        )

    def as_json(self) -> dict[str, list[Event]]:
        return {"S": sorted(self.started), "T": sorted(self.terminated)}

    def __str__(self) -> str:
        return f"({format_events(self.started)},{format_events(self.terminated)})"


EMPTY = STConfig(frozenset(), frozenset())


@dataclass(frozen=True)
class STStructure:
    """Labelled events together with a set of ST-configurations over them."""

    events: frozenset[Event]
    configs: frozenset[STConfig]
    labeling: Mapping[Event, Label] = field(default_factory=dict, hash=False)
    mode: str = field(default=ValidationMode.STRICT, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.labeling, MappingProxyType):
            object.__setattr__(self, "labeling", MappingProxyType(dict(self.labeling)))

    def __contains__(self, config: object) -> bool:
        return config in self.configs

    def __len__(self) -> int:
        return len(self.configs)

    def label(self, event: Event) -> Label:
        return self.labeling[event]

    def sorted_events(self) -> list[Event]:
        return sorted(self.events)

    def sorted_configs(self) -> list[STConfig]:
        return sorted(self.configs, key=STConfig.sort_key)

    @property
    def labels(self) -> frozenset[Label]:
        return frozenset(self.labeling.values())

    def with_configs(self, configs: Iterable[STConfig]) -> STStructure:
        """Same events and labels, different configuration set (no re-validation)."""

        return STStructure(self.events, frozenset(configs), self.labeling, self.mode)

    def rename(self, mapping: Mapping[Event, Event]) -> STStructure:
        return STStructure(
            frozenset(mapping[event] for event in self.events),
            frozenset(config.rename(mapping) for config in self.configs),
            {mapping[event]: label for event, label in self.labeling.items()},
            self.mode,
        )

    def __str__(self) -> str:
        body = ", ".join(str(config) for config in self.sorted_configs())
        return "{" + body + "}"


def _coerce_config(raw: STConfig | tuple) -> STConfig:
    if isinstance(raw, STConfig):
        return raw
    started, terminated = raw
    return STConfig.of(started, terminated)


def validate_st(
    raw_events: Iterable[Event],
    raw_configs: Iterable[STConfig | tuple],
    raw_labeling: Mapping[Event, Label] | None = None,
    *,
    mode: str | None = None,
) -> STStructure:
    """
    Check the ST-structure constraints and return the canonical structure.

    Events missing from the labeling are labelled by their own id.
    """

    mode = ValidationMode(mode or settings.TRUECC_VALIDATION_MODE)
    events = frozenset(raw_events)
    labeling = dict(raw_labeling or {})
    for event in sorted(labeling):
        if event not in events:
            raise UndeclaredEvent(event=event)
    for event in events:
        labeling.setdefault(event, event)

    configs = frozenset(_coerce_config(raw) for raw in raw_configs)
    for config in sorted(configs, key=STConfig.sort_key):
        if not config.is_well_formed:
            raise ConstraintTnotSubsetS(config=config)
        undeclared = config.events - events
        if undeclared:
            raise UndeclaredEvent(event=min(undeclared))

    diagonals = [config.started for config in configs if config.is_diagonal]
    for config in sorted(configs, key=STConfig.sort_key):
        if mode == ValidationMode.STRICT:
            if config.diagonal not in configs:
                raise MissingClosure(config=config, diagonal=config.diagonal)
        elif not any(config.started <= started for started in diagonals):
            raise MissingClosure(config=config, diagonal=config.diagonal)

    if mode == ValidationMode.WEAK:
        logger.info("Accepted %d configurations under the weak constraint", len(configs))
    return STStructure(events, configs, labeling, mode)


def structure(
    configs: Iterable[STConfig | tuple],
    labels: Mapping[Event, Label] | None = None,
    *,
    events: Iterable[Event] | None = None,
    mode: str | None = None,
) -> STStructure:
    """Shorthand for ``validate_st`` that infers the events from the configurations."""

    configs = [_coerce_config(raw) for raw in configs]
    if events is None:
        events = set().union(*(config.events for config in configs)) | set(labels or {})
    return validate_st(events, configs, labels, mode=mode)
