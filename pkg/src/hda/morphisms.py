"""
HDA morphisms and isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from src.hda.cells import HDA, Cell

__all__ = ["HDAMorphism", "hda_isomorphisms", "hda_isomorphic", "hda_morphism_check"]


@dataclass(frozen=True)
class HDAMorphism:
    pairs: tuple[tuple[Cell, Cell], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[Cell, Cell]) -> HDAMorphism:
        return cls(tuple(sorted(mapping.items())))

    @property
    def mapping(self) -> dict[Cell, Cell]:
        return dict(self.pairs)

    def __getitem__(self, cell: Cell) -> Cell:
        return self.mapping[cell]

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def is_injective(self) -> bool:
        images = [image for _, image in self.pairs]
        return len(set(images)) == len(images)

    def as_json(self) -> dict[Cell, Cell]:
        return dict(self.pairs)


def _face_graph(h: HDA, up_to_reindexing: bool) -> nx.DiGraph:
    """Cells as nodes, one edge per (cell, face) carrying the maps that realise it."""

    graph = nx.DiGraph()
    for cell in h.cells():
        graph.add_node(
            cell,
            dim=h.dims[cell],
            label=h.labeling.get(cell),
            initial=cell == h.initial,
        )
    for kind, maps in (("s", h.sources), ("t", h.targets)):
        for (cell, i), face in maps.items():
            tag = kind if up_to_reindexing else (kind, i)
            if graph.has_edge(cell, face):
                graph.edges[cell, face]["maps"] |= {tag}
            else:
                graph.add_edge(cell, face, maps={tag})
    return graph


def _node_match(left: dict, right: dict) -> bool:
    return (left["dim"], left["label"], left["initial"]) == (
        right["dim"],
        right["label"],
        right["initial"],
    )


def _edge_match(left: dict, right: dict) -> bool:
    return left["maps"] == right["maps"]


def hda_isomorphisms(
    h: HDA, g: HDA, *, up_to_reindexing: bool = False
) -> Iterator[HDAMorphism]:
    if len(h) != len(g) or sorted(h.dims.values()) != sorted(g.dims.values()):
        return
    matcher = DiGraphMatcher(
        _face_graph(h, up_to_reindexing),
        _face_graph(g, up_to_reindexing),
        node_match=_node_match,
        edge_match=_edge_match,
    )
    for match in matcher.isomorphisms_iter():
        yield HDAMorphism.from_mapping(match)


def hda_isomorphic(h: HDA, g: HDA, *, up_to_reindexing: bool = False) -> HDAMorphism | None:
    """
    A bijective morphism from ``h`` onto ``g``, or ``None``.

    With ``up_to_reindexing`` only the sets of s-faces and t-faces must correspond.
    """

    return next(hda_isomorphisms(h, g, up_to_reindexing=up_to_reindexing), None)


def hda_morphism_check(mapping: Mapping[Cell, Cell], h: HDA, g: HDA) -> bool:
    """Total, dimension preserving, and preserving the initial state, labels and all maps."""

    if set(mapping) != set(h.dims):
        return False
    for cell, image in mapping.items():
        if image not in g or g.dims[image] != h.dims[cell]:
            return False
        if h.dims[cell] == 1 and h.label(cell) != g.labeling.get(image):
            return False
    if mapping.get(h.initial) != g.initial:
        return False
    for kind in ("s", "t"):
        for (cell, i), face in (h.sources if kind == "s" else h.targets).items():
            if g.face(kind, mapping[cell], i) != mapping[face]:
                return False
    return True
