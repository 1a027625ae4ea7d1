"""
Chu spaces over K = 2, 3 and 4 and the encodings of configuration, ST- and STC-structures.

A state is a row of the valuation matrix: one ``ChuValue`` per carrier event.
Structures map to Chu spaces one configuration per state:

    e ∉ S            -> 0      (✕ instead when e ∈ C)
    e ∈ S, e ∉ T     -> ⊙
    e ∈ T            -> 1
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping

import networkx as nx
import numpy as np
from django.conf import settings

from src.core.exceptions import InvalidValuation
from src.core.models import ValidationMode
from src.core.structures import Event, Label, STConfig, STStructure, validate_st
from src.related.structures import ConfigStructure
from src.stc.models import ChuOrder, ChuValue
from src.stc.structures import STCConfig, STCStructure, validate_stc

logger = logging.getLogger(__name__)

__all__ = [
    "ChuSpace",
    "ChuStep",
    "chu_domain",
    "chu_order",
    "chu_steps",
    "chu2_encode",
    "chu2_decode",
    "chu3_encode",
    "chu3_decode",
    "chu4_encode",
    "chu4_decode",
]

_DOMAINS = {
    2: (ChuValue.NOT_STARTED, ChuValue.TERMINATED),
    3: (ChuValue.NOT_STARTED, ChuValue.RUNNING, ChuValue.TERMINATED),
    4: tuple(ChuValue),
}
_SYMBOLS = {value.label: value for value in ChuValue}


def chu_domain(k: int) -> tuple[ChuValue, ...]:
    if k not in _DOMAINS:
        raise ValueError(f"Chu spaces are defined over K in (2, 3, 4), not {k}.")
    return _DOMAINS[k]


@dataclass(frozen=True)
class ChuSpace:
    """Carrier events, a set of states and the labels carried along for decoding."""

    k: int
    carrier: tuple[Event, ...]
    states: frozenset[tuple[int, ...]]
    labeling: Mapping[Event, Label] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if not isinstance(self.labeling, MappingProxyType):
            object.__setattr__(self, "labeling", MappingProxyType(dict(self.labeling)))

    @classmethod
    def from_matrix(
        cls, k: int, carrier: Iterable[Event], matrix: np.ndarray, labeling=None
    ) -> ChuSpace:
        carrier = tuple(carrier)
        allowed = np.array([int(value) for value in chu_domain(k)])
        bad = np.argwhere(~np.isin(matrix, allowed))
        if len(bad):
            row, column = bad[0]
            raise InvalidValuation(value=int(matrix[row, column]), event=carrier[column], k=k)
        states = frozenset(tuple(int(value) for value in row) for row in matrix)
        return cls(k, carrier, states, labeling or {})

    @classmethod
    def from_states(
        cls,
        k: int,
        carrier: Iterable[Event],
        states: Iterable[Mapping[Event, Any]],
        labeling: Mapping[Event, Label] | None = None,
    ) -> ChuSpace:
        """States as ``{event: symbol}`` with symbols ``0``, ``⊙``, ``1`` and ``✕``."""

        carrier = tuple(sorted(carrier))
        rows = []
        for state in states:
            row = []
            for event in carrier:
                raw = state.get(event)
                value = _SYMBOLS.get(raw) if isinstance(raw, str) else None
                if value is None:
                    raise InvalidValuation(value=raw, event=event, k=k)
                row.append(int(value))
            rows.append(row)
        matrix = np.array(rows, dtype=np.int8).reshape(len(rows), len(carrier))
        return cls.from_matrix(k, carrier, matrix, labeling)

    @property
    def matrix(self) -> np.ndarray:
        rows = sorted(self.states)
        return np.array(rows, dtype=np.int8).reshape(len(rows), len(self.carrier))

    def __len__(self) -> int:
        return len(self.states)

    def r(self, event: Event, state: tuple[int, ...]) -> ChuValue:
        """The matrix entry of ``event`` in ``state``."""

        return ChuValue(state[self.carrier.index(event)])

    def valuations(self) -> list[dict[Event, ChuValue]]:
        return [
            {event: ChuValue(value) for event, value in zip(self.carrier, row)}
            for row in sorted(self.states)
        ]

    def as_json(self) -> dict[str, Any]:
        return {
            "K": self.k,
            "events": list(self.carrier),
            "labels": {event: self.labeling.get(event, event) for event in self.carrier},
            "states": [
                {event: value.label for event, value in valuation.items()}
                for valuation in self.valuations()
            ],
        }


def _membership(carrier: tuple[Event, ...], events: frozenset[Event]) -> np.ndarray:
    return np.array([event in events for event in carrier], dtype=np.int8)


def _encode(k, carrier, rows: list[np.ndarray], labeling) -> ChuSpace:
    matrix = np.array(rows, dtype=np.int8).reshape(len(rows), len(carrier))
    return ChuSpace.from_matrix(k, carrier, matrix, labeling)


def chu2_encode(c: ConfigStructure) -> ChuSpace:
    carrier = tuple(sorted(c.events))
    rows = [2 * _membership(carrier, config) for config in c.sorted_configs()]
    return _encode(2, carrier, rows, c.labeling)


def chu2_decode(chu: ChuSpace) -> ConfigStructure:
    _require_k(chu, 2)
    carrier = np.array(chu.carrier, dtype=object)
    configs = frozenset(frozenset(carrier[row == ChuValue.TERMINATED]) for row in chu.matrix)
    return ConfigStructure(frozenset(chu.carrier), configs, chu.labeling)


def chu3_encode(st: STStructure) -> ChuSpace:
    carrier = tuple(st.sorted_events())
    rows = [
        _membership(carrier, config.started) + _membership(carrier, config.terminated)
        for config in st.sorted_configs()
    ]
    return _encode(3, carrier, rows, st.labeling)


def chu3_decode(chu: ChuSpace) -> STStructure:
    _require_k(chu, 3)
    carrier = np.array(chu.carrier, dtype=object)
    configs = [
        STConfig(
            frozenset(carrier[row != ChuValue.NOT_STARTED]),
            frozenset(carrier[row == ChuValue.TERMINATED]),
        )
        for row in chu.matrix
    ]
    return validate_st(chu.carrier, configs, chu.labeling, mode=ValidationMode.STRICT)


def chu4_encode(stc: STCStructure) -> ChuSpace:
    carrier = tuple(stc.sorted_events())
    rows = [
        _membership(carrier, config.started)
        + _membership(carrier, config.terminated)
        + 3 * _membership(carrier, config.canceled)
        for config in stc.sorted_configs()
    ]
    return _encode(4, carrier, rows, stc.labeling)


def chu4_decode(chu: ChuSpace) -> STCStructure:
    _require_k(chu, 4)
    carrier = np.array(chu.carrier, dtype=object)
    configs = [
        STCConfig(
            frozenset(carrier[(row == ChuValue.RUNNING) | (row == ChuValue.TERMINATED)]),
            frozenset(carrier[row == ChuValue.TERMINATED]),
            frozenset(carrier[row == ChuValue.CANCELED]),
        )
        for row in chu.matrix
    ]
    return validate_stc(chu.carrier, configs, chu.labeling)


def _require_k(chu: ChuSpace, k: int) -> None:
    if chu.k != k:
        raise ValueError(f"Expected a Chu space over {k}, got one over {chu.k}.")


def chu_order(k: int, order: str | None = None) -> nx.DiGraph:
    """Covering pairs of the order on K; the enabling order adds ✕ -> 0."""

    order = ChuOrder(order or settings.TRUECC_CHU4_ORDER)
    graph = nx.DiGraph()
    graph.add_nodes_from(chu_domain(k))
    if k == 2:
        graph.add_edge(ChuValue.NOT_STARTED, ChuValue.TERMINATED)
        return graph
    graph.add_edge(ChuValue.NOT_STARTED, ChuValue.RUNNING)
    graph.add_edge(ChuValue.RUNNING, ChuValue.TERMINATED)
    if k == 4:
        graph.add_edge(ChuValue.NOT_STARTED, ChuValue.CANCELED)
        if order == ChuOrder.ENABLING:
            graph.add_edge(ChuValue.CANCELED, ChuValue.NOT_STARTED)
    return graph


@dataclass(frozen=True)
class ChuStep:
    source: tuple[int, ...]
    target: tuple[int, ...]
    event: Event
    before: ChuValue
    after: ChuValue

    def as_json(self) -> dict[str, str]:
        return {"event": self.event, "from": self.before.label, "to": self.after.label}


def chu_steps(chu: ChuSpace, *, order: str | None = None) -> list[ChuStep]:
    """Pairs of states differing in one event along a covering pair of the order."""

    graph = chu_order(chu.k, order)
    matrix = chu.matrix
    if not len(matrix):
        return []
    differs = matrix[:, None, :] != matrix[None, :, :]
    steps: list[ChuStep] = []
    for i, j in np.argwhere(differs.sum(axis=2) == 1):
        (column,) = np.flatnonzero(differs[i, j])
        before, after = ChuValue(int(matrix[i, column])), ChuValue(int(matrix[j, column]))
        if graph.has_edge(before, after):
            steps.append(
                ChuStep(
                    tuple(int(v) for v in matrix[i]),
                    tuple(int(v) for v in matrix[j]),
                    chu.carrier[column],
                    before,
                    after,
                )
            )
    logger.debug("Chu space over %d has %d covering steps", chu.k, len(steps))
    return steps
