"""
Isomorphism and morphisms of ST-structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from src.core.structures import Event, STConfig, STStructure

__all__ = ["EventBijection", "st_isomorphic", "is_st_morphism", "compose"]


@dataclass(frozen=True)
class EventBijection:
    """An injective event map stored as sorted pairs so it can be hashed and compared."""

    pairs: tuple[tuple[Event, Event], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[Event, Event]) -> EventBijection:
        images = list(mapping.values())
        if len(set(images)) != len(images):
            raise ValueError("Event map is not injective.")
        return cls(tuple(sorted(mapping.items())))

    @property
    def mapping(self) -> dict[Event, Event]:
        return dict(self.pairs)

    @property
    def inverse(self) -> EventBijection:
        return EventBijection(tuple(sorted((image, event) for event, image in self.pairs)))

    @property
    def domain(self) -> frozenset[Event]:
        return frozenset(event for event, _ in self.pairs)

    def __getitem__(self, event: Event) -> Event:
        return self.mapping[event]

    def __len__(self) -> int:
        return len(self.pairs)

    def extend(self, event: Event, image: Event) -> EventBijection:
        return EventBijection(tuple(sorted(self.pairs + ((event, image),))))

    def restrict(self, events: frozenset[Event]) -> EventBijection:
        return EventBijection(tuple(pair for pair in self.pairs if pair[0] in events))

    def as_json(self) -> dict[Event, Event]:
        return dict(self.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{event}->{image}" for event, image in self.pairs) + "}"


def _incidence_graph(st: STStructure) -> nx.DiGraph:
    """Events and configurations as nodes; an edge e -> c records whether e is running or done."""

    graph = nx.DiGraph()
    for event in st.sorted_events():
        graph.add_node(("event", event), kind="event", label=st.label(event))
    for config in st.sorted_configs():
        graph.add_node(("config", config), kind="config", label=None)
        for event in sorted(config.started):
            role = "t" if event in config.terminated else "s"
            graph.add_edge(("event", event), ("config", config), role=role)
    return graph


def _node_match(left: dict, right: dict) -> bool:
    return left["kind"] == right["kind"] and left["label"] == right["label"]


def _edge_match(left: dict, right: dict) -> bool:
    return left["role"] == right["role"]


def st_isomorphic(a: STStructure, b: STStructure) -> EventBijection | None:
    """
    Return a label-preserving event bijection mapping the configurations of ``a``
    exactly onto those of ``b``, or ``None``.
    """

    if len(a.events) != len(b.events) or len(a) != len(b):
        return None
    if sorted(a.labeling.values()) != sorted(b.labeling.values()):
        return None
    matcher = DiGraphMatcher(
        _incidence_graph(a), _incidence_graph(b), node_match=_node_match, edge_match=_edge_match
    )
    for match in matcher.isomorphisms_iter():
        return EventBijection.from_mapping(
            {left[1]: right[1] for left, right in match.items() if left[0] == "event"}
        )
    return None


def is_st_morphism(mapping: Mapping[Event, Event], a: STStructure, b: STStructure) -> bool:
    """
    Partial event map that preserves labels, sends every configuration of ``a`` to a
    configuration of ``b`` and is injective on each set of started events.
    """

    for event, image in mapping.items():
        if event not in a.events or image not in b.events:
            return False
        if a.label(event) != b.label(image):
            return False
    for config in a.sorted_configs():
        started = [mapping[event] for event in sorted(config.started) if event in mapping]
        if len(set(started)) != len(started):
            return False
        terminated = frozenset(mapping[event] for event in config.terminated if event in mapping)
        image = STConfig(frozenset(started), terminated)
        if image not in b:
            return False
    return True


def compose(
    first: Mapping[Event, Event], second: Mapping[Event, Event]
) -> dict[Event, Event]:
    """``second`` after ``first``, defined where both are."""

    return {event: second[image] for event, image in first.items() if image in second}
