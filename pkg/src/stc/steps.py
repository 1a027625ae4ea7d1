"""
Steps of STC-structures: s/t steps keep C, cancellation steps grow (or switch) it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from django.conf import settings

from src.core.exceptions import ConfigNotInStructure
from src.core.structures import Event, Label
from src.stc.models import CancellationKind, ChuOrder
from src.stc.structures import STCConfig, STCStructure

__all__ = ["CancellationStep", "default_kinds", "step_kinds", "stc_steps"]

Kind = CancellationKind

MONOTONE_KINDS = frozenset(
    {
        Kind.START,
        Kind.TERMINATE,
        Kind.CANCEL_ONE_START,
        Kind.CANCEL_ONE_TERMINATE,
        Kind.CANCEL_MANY_START,
        Kind.CANCEL_MANY_TERMINATE,
    }
)


@dataclass(frozen=True)
class CancellationStep:
    source: STCConfig
    target: STCConfig
    kind: str
    event: Event
    label: Label

    def __str__(self) -> str:
        return f"{self.kind}:{self.event}"

    def as_json(self) -> dict[str, str]:
        return {
            "source": str(self.source),
            "target": str(self.target),
            "kind": str(self.kind),
            "event": self.event,
            "label": self.label,
        }


def default_kinds(order: str | None = None) -> frozenset[str]:
    """Canceling-only kinds, plus the enabling ones when the Chu-4 order allows ✕ < 0."""

    order = ChuOrder(order or settings.TRUECC_CHU4_ORDER)
    if order == ChuOrder.ENABLING:
        return frozenset(Kind)
    return MONOTONE_KINDS


def _single(before: frozenset[Event], after: frozenset[Event]) -> Event | None:
    if before < after and len(after - before) == 1:
        (event,) = after - before
        return event
    return None


def step_kinds(source: STCConfig, target: STCConfig) -> tuple[Event | None, list[str]]:
    """The progressing event and every kind whose condition the pair satisfies."""

    before, after = source.canceled, target.canceled
    if source.terminated == target.terminated:
        event = _single(source.started, target.started)
        plain, one, many, switch = (
            Kind.START,
            Kind.CANCEL_ONE_START,
            Kind.CANCEL_MANY_START,
            Kind.SWITCH_START,
        )
        switch_ok = event is not None and event not in before
    elif source.started == target.started:
        event = _single(source.terminated, target.terminated)
        plain, one, many, switch = (
            Kind.TERMINATE,
            Kind.CANCEL_ONE_TERMINATE,
            Kind.CANCEL_MANY_TERMINATE,
            Kind.SWITCH_TERMINATE,
        )
        switch_ok = True
    else:
        return None, []
    if event is None:
        return None, []

    kinds: list[str] = []
    if before == after:
        kinds.append(plain)
    if before < after:
        if len(after - before) == 1:
            kinds.append(one)
        kinds.append(many)
    if switch_ok and (before < after or after < before):
        kinds.append(switch)
    return event, kinds


def stc_steps(
    stc: STCStructure,
    config: STCConfig,
    allowed: Iterable[str] | None = None,
    *,
    order: str | None = None,
) -> list[CancellationStep]:
    """Every step of an allowed kind from ``config`` to a configuration of ``stc``."""

    if config not in stc:
        raise ConfigNotInStructure(config=config)
    kinds = frozenset(allowed) if allowed is not None else default_kinds(order)
    steps: list[CancellationStep] = []
    for target in stc.sorted_configs():
        event, matched = step_kinds(config, target)
        for kind in matched:
            if kind in kinds:
                steps.append(CancellationStep(config, target, kind, event, stc.label(event)))
    return steps
