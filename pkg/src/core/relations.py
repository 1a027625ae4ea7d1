"""
Per-configuration concurrency and causality, global conflict and cc-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_node_match

from src.core.exceptions import ConfigNotInStructure, UndeclaredEvent
from src.core.semantics import sub_configs
from src.core.structures import Event, Label, STConfig, STStructure

__all__ = [
    "Pomset",
    "concurrency",
    "causality",
    "in_conflict",
    "pomset",
    "parallel_set",
    "cc_equivalent",
    "cc_simulates",
    "cc_equivalent_structures",
]


def _require(st: STStructure, config: STConfig) -> None:
    if config not in st:
        raise ConfigNotInStructure(config=config)


def concurrency(st: STStructure, config: STConfig) -> frozenset[frozenset[Event]]:
    """Unordered pairs running together in some sub-configuration."""

    _require(st, config)
    pairs: set[frozenset[Event]] = set()
    for sub in sub_configs(st, config):
        running = sorted(sub.running)
        for index, first in enumerate(running):
            for second in running[index + 1 :]:
                pairs.add(frozenset((first, second)))
    return frozenset(pairs)


def causality(st: STStructure, config: STConfig) -> frozenset[tuple[Event, Event]]:
    """Ordered pairs (e, e') such that e' never starts before e terminates."""

    _require(st, config)
    subs = sub_configs(st, config)
    events = sorted(config.started)
    return frozenset(
        (cause, effect)
        for cause in events
        for effect in events
        if cause != effect
        and all(cause in sub.terminated for sub in subs if effect in sub.started)
    )


def in_conflict(st: STStructure, events: Iterable[Event]) -> bool:
    events = frozenset(events)
    undeclared = events - st.events
    if undeclared:
        raise UndeclaredEvent(event=min(undeclared))
    return not any(events <= config.started for config in st.configs)


@dataclass(frozen=True)
class Pomset:
    """Started events ordered by causality, with their labels."""

    carrier: frozenset[Event]
    order: frozenset[tuple[Event, Event]]
    labels: tuple[tuple[Event, Label], ...]

    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for event, label in self.labels:
            graph.add_node(event, label=label)
        graph.add_edges_from(sorted(self.order))
        return graph

    def is_partial_order(self) -> bool:
        graph = self.graph()
        if not nx.is_directed_acyclic_graph(graph):
            return False
        closure = nx.transitive_closure_dag(graph)
        return set(closure.edges) == set(graph.edges)

    def isomorphisms(self, other: Pomset) -> Iterator[dict[Event, Event]]:
        if len(self.carrier) != len(other.carrier) or len(self.order) != len(other.order):
            return
        matcher = DiGraphMatcher(
            self.graph(), other.graph(), node_match=categorical_node_match("label", None)
        )
        yield from matcher.isomorphisms_iter()


def pomset(st: STStructure, config: STConfig) -> Pomset:
    return Pomset(
        carrier=config.started,
        order=causality(st, config),
        labels=tuple((event, st.label(event)) for event in sorted(config.started)),
    )


def parallel_set(st: STStructure, config: STConfig) -> frozenset[frozenset[Event]]:
    return concurrency(st, config)


def cc_equivalent(
    config_a: STConfig, st_a: STStructure, config_b: STConfig, st_b: STStructure
) -> bool:
    """Isomorphic pomsets whose isomorphism also carries one parallel set onto the other."""

    pom_a, pom_b = pomset(st_a, config_a), pomset(st_b, config_b)
    par_a, par_b = parallel_set(st_a, config_a), parallel_set(st_b, config_b)
    if len(par_a) != len(par_b):
        return False
    for mapping in pom_a.isomorphisms(pom_b):
        if {frozenset(mapping[event] for event in pair) for pair in par_a} == par_b:
            return True
    return False


def cc_simulates(st_a: STStructure, st_b: STStructure) -> bool:
    """Every configuration of ``st_b`` is cc-equivalent to one of ``st_a``."""

    return all(
        any(cc_equivalent(config_a, st_a, config_b, st_b) for config_a in st_a.sorted_configs())
        for config_b in st_b.sorted_configs()
    )


def cc_equivalent_structures(st_a: STStructure, st_b: STStructure) -> bool:
    return cc_simulates(st_a, st_b) and cc_simulates(st_b, st_a)
