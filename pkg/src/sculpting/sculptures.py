"""
Sculptures: HDAs embedded injectively into a bulk.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Mapping

import networkx as nx
from django.conf import settings

from src.core.exceptions import DimensionCap, SearchBudgetExceeded, StructureError
from src.core.models import ValidationMode
from src.core.structures import EMPTY, Event, Label, STConfig, STStructure, validate_st
from src.hda.cells import HDA, Cell, hda_step_graph, require_well_behaved
from src.hda.models import FaceMap
from src.hda.morphisms import hda_isomorphisms, hda_morphism_check
from src.hda.paths import rooted_paths
from src.related.translations import require_translatable
from src.sculpting.bulks import Bulk, bulk_face, make_bulk
from src.sculpting.chains import apply_chain, chain_to
from src.sculpting.listing import EventListing
from src.sculpting.translations import cell_id, configs_by_paths, event_classes, stintoh

logger = logging.getLogger(__name__)

__all__ = [
    "Sculpture",
    "sculpture",
    "stintosculpture",
    "sculpintost",
    "is_sculpture",
    "sculpture_bound",
    "simplify",
    "over_complicate",
    "sculptures_isomorphic",
    "hintost_sculpture",
    "bulk_event_equivalence",
]


@dataclass(frozen=True)
class Sculpture:
    hda: HDA
    bulk: Bulk
    embedding: Mapping[Cell, Cell] = field(hash=False)

    @property
    def dim(self) -> int:
        return self.bulk.dim

    def key(self, cell: Cell) -> STConfig:
        """The (S, T) pair of the bulk cell ``cell`` is embedded onto."""

        return self.bulk.keys[self.embedding[cell]]

    @property
    def used_axes(self) -> frozenset[Event]:
        return frozenset().union(*(self.key(cell).started for cell in self.embedding))

    def as_json(self) -> dict[str, Any]:
        listing = self.bulk.listing

        def positions(events: frozenset[Event]) -> list[int]:
            return sorted(listing.index(event) for event in events)

        return {
            "hda": self.hda.as_json(),
            "bulkDim": self.dim,
            "bulkEvents": list(listing),
            "bulkLabels": {event: self.bulk.axis_label(event) for event in listing},
            "embedding": {
                cell: [positions(self.key(cell).started), positions(self.key(cell).terminated)]
                for cell in self.hda.cells()
            },
        }


def sculpture(h: HDA, bulk: Bulk, embedding: Mapping[Cell, Cell]) -> Sculpture:
    """Check that ``embedding`` is an injective HDA morphism into the bulk."""

    if len(set(embedding.values())) != len(embedding):
        raise StructureError("The sculpture embedding is not injective.")
    if not hda_morphism_check(embedding, h, bulk.hda):
        raise StructureError("The sculpture embedding is not an HDA morphism.")
    return Sculpture(h, bulk, dict(embedding))


def _rebulk(sc: Sculpture, listing: EventListing, labels: Mapping[Event, Label]) -> Sculpture:
    bulk = make_bulk(len(listing), listing, labels, cap=max(len(listing), sc.dim))
    embedding = {cell: bulk.cell(sc.key(cell)) for cell in sc.embedding}
    return sculpture(sc.hda, bulk, embedding)


def stintosculpture(st: STStructure, listing: EventListing | None = None) -> Sculpture:
    """stintoh plus the bulk over all events, embedding q^(S,T) onto b^(S,T)."""

    require_translatable(st)
    listing = listing or EventListing.default(st.events)
    h = stintoh(st, listing)
    bulk = make_bulk(len(listing), listing, st.labeling)
    return sculpture(h, bulk, {cell: cell for cell in h.cells()})


def sculpintost(sc: Sculpture) -> STStructure:
    """Each cell gets the pair reached from the bulk top by a chain down to its image."""

    listing = sc.bulk.listing
    top = STConfig(frozenset(listing), frozenset())
    configs = {apply_chain(chain_to(sc.key(cell), listing), top, listing) for cell in sc.embedding}
    labels = {event: sc.bulk.axis_label(event) for event in listing}
    return validate_st(listing, configs, labels, mode=ValidationMode.STRICT)


def simplify(sc: Sculpture) -> Sculpture:
    """Drop every bulk axis the embedded image never starts."""

    used = sc.used_axes
    if used == sc.bulk.events:
        return sc
    listing = sc.bulk.listing.restrict(used)
    logger.debug("Simplifying a sculpture from dimension %d to %d", sc.dim, len(listing))
    return _rebulk(sc, listing, {event: sc.bulk.axis_label(event) for event in listing})


def over_complicate(sc: Sculpture, m: int) -> Sculpture:
    """Embed into a bulk with ``m - dim`` extra, unused axes."""

    if m < sc.dim:
        raise StructureError(
            "Cannot over-complicate a %(dim)s-dimensional sculpture to %(m)s.", dim=sc.dim, m=m
        )
    events = list(sc.bulk.listing)
    labels = {event: sc.bulk.axis_label(event) for event in events}
    counter = 0
    while len(events) < m:
        counter += 1
        extra = f"x{counter}"
        if extra not in labels:
            events.append(extra)
            labels[extra] = extra
    return _rebulk(sc, EventListing(tuple(events)), labels)


def _axis_map(a: Sculpture, b: Sculpture, cells: Mapping[Cell, Cell]) -> dict[Event, Event] | None:
    axes: dict[Event, Event] = {}
    for cell in a.hda.cells(1):
        (mine,) = a.key(cell).running
        (theirs,) = b.key(cells[cell]).running
        if axes.setdefault(mine, theirs) != theirs:
            return None
    if len(set(axes.values())) != len(axes):
        return None
    for cell in a.hda.cells():
        if a.key(cell).rename(axes) != b.key(cells[cell]):
            return None
    return axes


def sculptures_isomorphic(a: Sculpture, b: Sculpture) -> bool:
    """
    Isomorphic HDAs whose embeddings agree up to a renaming of bulk axes,
    after over-complicating both to the larger dimension.
    """

    n = max(a.dim, b.dim)
    a, b = over_complicate(a, n), over_complicate(b, n)
    for iso in hda_isomorphisms(a.hda, b.hda, up_to_reindexing=True):
        if _axis_map(a, b, iso.mapping) is not None:
            return True
    return False


def sculpture_bound(h: HDA, *, budget: int | None = None) -> int:
    """Sum over labels of the most s-steps with that label on a single rooted path."""

    most: Counter[Label] = Counter()
    for path in rooted_paths(h, budget=budget):
        starts = Counter(
            h.event_label(step.target, step.index)
            for step in path.steps
            if step.kind == FaceMap.SOURCE
        )
        for label, count in starts.items():
            most[label] = max(most[label], count)
    return sum(most.values())


class _Embedder:
    """Backtracking search for an injective morphism into an n-bulk, labelling axes on the way."""

    def __init__(self, h: HDA, n: int, budget: int) -> None:
        self.h = h
        self.bulk = make_bulk(n, cap=n)
        self.budget = budget
        self.visited = 0
        self.order = list(nx.lexicographical_topological_sort(hda_step_graph(h), key=h.key))
        self.image: dict[Cell, Cell] = {}
        self.used: set[Cell] = set()
        self.axis_labels: dict[Event, Label] = {}

    def face(self, kind: str, cell: Cell, i: int) -> Cell:
        return cell_id(bulk_face(self.bulk.keys[cell], kind, i, self.bulk.listing))

    def candidates(self, cell: Cell) -> list[Cell]:
        h = self.h
        if cell == h.initial:
            return [cell_id(EMPTY)]
        for coface, kind, i in h.cofaces(cell):
            if coface in self.image:
                return [self.face(kind, self.image[coface], i)]
        for i in range(1, h.dims[cell] + 1):
            below = h.s(cell, i)
            if below in self.image:
                return [
                    coface
                    for coface, kind, j in self.bulk.hda.cofaces(self.image[below])
                    if kind == FaceMap.SOURCE and j == i
                ]
        return []

    def fits(self, cell: Cell, target: Cell) -> bool:
        h = self.h
        if target in self.used or self.bulk.hda.dims[target] != h.dims[cell]:
            return False
        for i in range(1, h.dims[cell] + 1):
            for kind in (FaceMap.SOURCE, FaceMap.TARGET):
                face = h.face(kind, cell, i)
                if face in self.image and self.image[face] != self.face(kind, target, i):
                    return False
        return all(
            self.face(kind, self.image[coface], i) == target
            for coface, kind, i in h.cofaces(cell)
            if coface in self.image
        )

    def claim_axis(self, cell: Cell, target: Cell) -> tuple[bool, Event | None]:
        """Whether the axis of ``target`` may carry the label of ``cell``, plus any new axis."""

        if self.h.dims[cell] != 1:
            return True, None
        (axis,) = self.bulk.keys[target].running
        label = self.h.label(cell)
        if axis in self.axis_labels:
            return self.axis_labels[axis] == label, None
        self.axis_labels[axis] = label
        return True, axis

    def search(self, position: int = 0) -> bool:
        if position == len(self.order):
            return True
        self.visited += 1
        if self.visited > self.budget:
            raise SearchBudgetExceeded(budget=self.budget)
        cell = self.order[position]
        for target in self.candidates(cell):
            if not self.fits(cell, target):
                continue
            ok, claimed = self.claim_axis(cell, target)
            if not ok:
                continue
            self.image[cell] = target
            self.used.add(target)
            if self.search(position + 1):
                return True
            del self.image[cell]
            self.used.discard(target)
            if claimed is not None:
                del self.axis_labels[claimed]
        return False

    def result(self) -> Sculpture:
        listing = self.bulk.listing
        labels = {axis: self.axis_labels.get(axis, axis) for axis in listing}
        bulk = make_bulk(len(listing), listing, labels, cap=len(listing))
        return sculpture(self.h, bulk, self.image)


def is_sculpture(
    h: HDA, *, max_dim: int | None = None, budget: int | None = None
) -> Sculpture | None:
    """
    A simplistic sculpture for ``h``, searching bulks from the label bound up
    to ``max_dim`` (the bound itself by default).

    ``None`` means no sculpture within the searched dimensions. Every sculpture
    needs at least ``sculpture_bound(h)`` axes, so a ``max_dim`` below it
    raises ``DimensionCap``.
    """

    require_well_behaved(h)
    budget = budget if budget is not None else settings.TRUECC_BUDGET
    bound = sculpture_bound(h, budget=budget)
    limit = max_dim if max_dim is not None else bound
    cap = settings.TRUECC_SCULPTURE_MAX_DIM
    if limit > cap:
        raise DimensionCap(dim=limit, cap=cap)
    if limit < bound:
        raise DimensionCap(
            "The label bound %(dim)s exceeds max_dim %(cap)s.", dim=bound, cap=limit
        )
    for n in range(bound, limit + 1):
        embedder = _Embedder(h, n, budget)
        if embedder.search():
            logger.info("Found a sculpture from a %d-bulk after %d nodes", n, embedder.visited)
            return simplify(embedder.result())
        logger.debug("No embedding into a %d-bulk (%d nodes)", n, embedder.visited)
    return None


def _axis_of(sc: Sculpture, cell: Cell) -> Event:
    (axis,) = sc.key(cell).running
    return axis


def hintost_sculpture(sc: Sculpture, *, budget: int | None = None) -> STStructure:
    """hintost with the events read off the bulk: a transition is the axis it runs along."""

    listing = sc.bulk.listing
    configs = configs_by_paths(sc.hda, lambda cell: _axis_of(sc, cell), budget=budget)
    labels = {event: sc.bulk.axis_label(event) for event in listing}
    return validate_st(listing, set(configs.values()), labels, mode=ValidationMode.STRICT)


def bulk_event_equivalence(sc: Sculpture) -> list[frozenset[Event]]:
    """The events of ``hintost(sc.hda)`` grouped by the bulk axis their transitions run along."""

    by_axis: dict[Event, set[Event]] = {}
    for event in event_classes(sc.hda):
        member = min(event.members, key=sc.hda.key)
        by_axis.setdefault(_axis_of(sc, member), set()).add(event.name)
    return sorted((frozenset(group) for group in by_axis.values()), key=sorted)
