"""
STC-configurations (S, T, C) and STC-structures.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping

from src.core.exceptions import (
    MissingClosure,
    MissingDiagonalWithC,
    ProjectionViolatesSTConstraint,
    SCOverlap,
    TnotSubsetS,
    UndeclaredEvent,
)
from src.core.models import ValidationMode
from src.core.structures import (
    Event,
    Label,
    STConfig,
    STStructure,
    format_events,
    validate_st,
)

logger = logging.getLogger(__name__)

__all__ = [
    "STCConfig",
    "STCStructure",
    "STC_EMPTY",
    "validate_stc",
    "stc_structure",
    "st_to_stc",
    "stc_project_st",
    "maximal_configs",
]


@dataclass(frozen=True)
class STCConfig:
    """Started, terminated and canceled events."""

    started: frozenset[Event]
    terminated: frozenset[Event] = frozenset()
    canceled: frozenset[Event] = frozenset()

    @classmethod
    def of(
        cls,
        started: Iterable[Event] = (),
        terminated: Iterable[Event] = (),
        canceled: Iterable[Event] = (),
    ) -> STCConfig:
        return cls(frozenset(started), frozenset(terminated), frozenset(canceled))

    @property
    def running(self) -> frozenset[Event]:
        return self.started - self.terminated

    @property
    def is_diagonal(self) -> bool:
        return self.started == self.terminated

    @property
    def events(self) -> frozenset[Event]:
        return self.started | self.terminated | self.canceled

    @property
    def st(self) -> STConfig:
        return STConfig(self.started, self.terminated)

    def sort_key(self) -> tuple:
        return (
            len(self.started) + len(self.terminated),
            sorted(self.started),
            sorted(self.terminated),
            len(self.canceled),
            sorted(self.canceled),
        )

    def issubset(self, other: STCConfig) -> bool:
        return (
            self.started <= other.started
            and self.terminated <= other.terminated
            and self.canceled <= other.canceled
        )

    def rename(self, mapping: Mapping[Event, Event]) -> STCConfig:
        return STCConfig(
            frozenset(mapping[event] for event in self.started),
            frozenset(mapping[event] for event in self.terminated),
            frozenset(mapping[event] for event in self.canceled),
        )

    def as_json(self) -> dict[str, list[Event]]:
        return {
            "S": sorted(self.started),
            "T": sorted(self.terminated),
            "C": sorted(self.canceled),
        }

    def __str__(self) -> str:
        parts = (self.started, self.terminated, self.canceled)
        return "(" + ",".join(format_events(part) for part in parts) + ")"


STC_EMPTY = STCConfig(frozenset(), frozenset(), frozenset())


@dataclass(frozen=True)
class STCStructure:
    events: frozenset[Event]
    configs: frozenset[STCConfig]
    labeling: Mapping[Event, Label] = field(default_factory=dict, hash=False)

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

    def sorted_configs(self) -> list[STCConfig]:
        return sorted(self.configs, key=STCConfig.sort_key)

    def as_json(self) -> dict[str, Any]:
        return {
            "events": self.sorted_events(),
            "labels": {event: self.labeling[event] for event in self.sorted_events()},
            "configs": [config.as_json() for config in self.sorted_configs()],
        }

    def __str__(self) -> str:
        return "{" + ", ".join(str(config) for config in self.sorted_configs()) + "}"


def _coerce(raw: STCConfig | tuple) -> STCConfig:
    if isinstance(raw, STCConfig):
        return raw
    started, terminated, canceled = raw
    return STCConfig.of(started, terminated, canceled)


def validate_stc(
    raw_events: Iterable[Event],
    raw_configs: Iterable[STCConfig | tuple],
    raw_labeling: Mapping[Event, Label] | None = None,
) -> STCStructure:
    """
    Check T ⊆ S and S ∩ C = ∅ per configuration, and that every (S, T, C)
    has some (S, S, C') with C ⊆ C'.
    """

    events = frozenset(raw_events)
    labeling = dict(raw_labeling or {})
    for event in sorted(labeling):
        if event not in events:
            raise UndeclaredEvent(event=event)
    for event in events:
        labeling.setdefault(event, event)

    configs = frozenset(_coerce(raw) for raw in raw_configs)
    ordered = sorted(configs, key=STCConfig.sort_key)
    for config in ordered:
        if not config.terminated <= config.started:
            raise TnotSubsetS(config=config)
        if config.started & config.canceled:
            raise SCOverlap(config=config)
        undeclared = config.events - events
        if undeclared:
            raise UndeclaredEvent(event=min(undeclared))

    by_started: dict[frozenset[Event], list[frozenset[Event]]] = {}
    for config in configs:
        if config.is_diagonal:
            by_started.setdefault(config.started, []).append(config.canceled)
    for config in ordered:
        if not any(config.canceled <= canceled for canceled in by_started.get(config.started, [])):
            raise MissingDiagonalWithC(config=config)
    return STCStructure(events, configs, labeling)


def stc_structure(
    configs: Iterable[STCConfig | tuple],
    labels: Mapping[Event, Label] | None = None,
    *,
    events: Iterable[Event] | None = None,
) -> STCStructure:
    """``validate_stc`` inferring the events from the configurations."""

    configs = [_coerce(raw) for raw in configs]
    if events is None:
        events = set().union(*(config.events for config in configs)) | set(labels or {})
    return validate_stc(events, configs, labels)


def st_to_stc(st: STStructure) -> STCStructure:
    return STCStructure(
        st.events,
        frozenset(STCConfig(config.started, config.terminated) for config in st.configs),
        st.labeling,
    )


def stc_project_st(stc: STCStructure) -> STStructure:
    """Forget cancellation; distinct triples may collapse onto one pair."""

    pairs = {config.st for config in stc.configs}
    logger.debug("Projection keeps %d of %d configurations", len(pairs), len(stc))
    try:
        return validate_st(stc.events, pairs, stc.labeling, mode=ValidationMode.STRICT)
    except MissingClosure as exc:
        raise ProjectionViolatesSTConstraint(config=exc.params["config"]) from exc


def maximal_configs(stc: STCStructure) -> frozenset[STCConfig]:
    """Configurations below no other one under componentwise inclusion."""

    return frozenset(
        config
        for config in stc.configs
        if not any(config != other and config.issubset(other) for other in stc.configs)
    )
