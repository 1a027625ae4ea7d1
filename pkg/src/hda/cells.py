"""
Cubical sets and higher dimensional automata.

An ``HDA`` stores its face maps as dictionaries keyed by ``(cell, index)``;
indexes are 1-based, as in the cubical laws. Cells sort by ``(dimension, id)``
everywhere, which fixes every enumeration order downstream.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

import networkx as nx

from src.core.exceptions import (
    CellNotFound,
    CubicalLawViolation,
    LabelMismatch,
    NoInitial,
    PartialMap,
    PreconditionViolated,
    StructureError,
)
from src.core.models import PropertyFlag
from src.core.structures import Label
from src.hda.models import FaceMap, NonDegeneracyRule

logger = logging.getLogger(__name__)

__all__ = [
    "Cell",
    "HDA",
    "HDAWitness",
    "validate_hda",
    "load_lenient",
    "hda",
    "reachable_cells",
    "hda_step_graph",
    "is_acyclic",
    "is_non_degenerate",
    "require_well_behaved",
]

Cell = str
FACE_KINDS = (FaceMap.SOURCE, FaceMap.TARGET)


def _freeze(mapping: Mapping) -> MappingProxyType:
    return mapping if isinstance(mapping, MappingProxyType) else MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class HDA:
    """Graded cells, s/t face maps, labels on transitions, an initial state and final states."""

    dims: Mapping[Cell, int] = field(hash=False)
    sources: Mapping[tuple[Cell, int], Cell] = field(hash=False)
    targets: Mapping[tuple[Cell, int], Cell] = field(hash=False)
    labeling: Mapping[Cell, Label] = field(hash=False)
    initial: Cell | None = None
    finals: frozenset[Cell] = frozenset()
    degenerate: bool = False

    def __post_init__(self) -> None:
        for name in ("dims", "sources", "targets", "labeling"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))
        object.__setattr__(self, "finals", frozenset(self.finals))

    def __contains__(self, cell: object) -> bool:
        return cell in self.dims

    def __len__(self) -> int:
        return len(self.dims)

    def key(self, cell: Cell) -> tuple[int, Cell]:
        return (self.dim(cell), cell)

    def dim(self, cell: Cell) -> int:
        try:
            return self.dims[cell]
        except KeyError:
            raise CellNotFound(cell=cell) from None

    def cells(self, dim: int | None = None) -> list[Cell]:
        chosen = self.dims if dim is None else [c for c, d in self.dims.items() if d == dim]
        return sorted(chosen, key=self.key)

    @property
    def max_dim(self) -> int:
        return max(self.dims.values(), default=-1)

    def face(self, kind: str, cell: Cell | None, i: int) -> Cell | None:
        if cell is None:
            return None
        maps = self.sources if kind == FaceMap.SOURCE else self.targets
        return maps.get((cell, i))

    def s(self, cell: Cell | None, i: int) -> Cell | None:
        return self.face(FaceMap.SOURCE, cell, i)

    def t(self, cell: Cell | None, i: int) -> Cell | None:
        return self.face(FaceMap.TARGET, cell, i)

    def label(self, cell: Cell) -> Label:
        return self.labeling[cell]

    @cached_property
    def _cofaces(self) -> dict[Cell, list[tuple[Cell, str, int]]]:
        found: dict[Cell, list[tuple[Cell, str, int]]] = {cell: [] for cell in self.dims}
        for kind in FACE_KINDS:
            maps = self.sources if kind == FaceMap.SOURCE else self.targets
            for (cell, i), face in maps.items():
                found[face].append((cell, kind, i))
        for entries in found.values():
            entries.sort(key=lambda entry: (self.key(entry[0]), entry[1], entry[2]))
        return found

    def cofaces(self, cell: Cell) -> list[tuple[Cell, str, int]]:
        """``(coface, kind, i)`` for every coface with ``kind_i(coface) == cell``."""

        return self._cofaces.get(cell, [])

    def event_label(self, cell: Cell, i: int) -> Label | None:
        """Label of the i-th event running in ``cell``, read off a transition below it."""

        dim = self.dim(cell)
        if dim == 1:
            return self.labeling.get(cell)
        drop = dim if i != dim else dim - 1
        face = self.s(cell, drop) or self.t(cell, drop)
        if face is None:
            return None
        return self.event_label(face, i if drop > i else i - 1)

    def restrict(self, kept: Iterable[Cell]) -> HDA:
        kept = frozenset(kept)
        return HDA(
            {cell: dim for cell, dim in self.dims.items() if cell in kept},
            {k: v for k, v in self.sources.items() if k[0] in kept and v in kept},
            {k: v for k, v in self.targets.items() if k[0] in kept and v in kept},
            {cell: label for cell, label in self.labeling.items() if cell in kept},
            self.initial if self.initial in kept else None,
            self.finals & kept,
            self.degenerate,
        )

    def as_json(self) -> dict[str, Any]:
        def faces(maps: Mapping[tuple[Cell, int], Cell]) -> list[dict[str, Any]]:
            return [
                {"cell": cell, "i": i, "to": maps[(cell, i)]}
                for cell, i in sorted(maps, key=lambda k: (self.key(k[0]), k[1]))
            ]

        return {
            "cells": [{"id": cell, "dim": self.dims[cell]} for cell in self.cells()],
            "s": faces(self.sources),
            "t": faces(self.targets),
            "labels": dict(sorted(self.labeling.items())),
            "initial": self.initial,
            "finals": sorted(self.finals, key=self.key),
        }


@dataclass(frozen=True)
class HDAWitness:
    rule: str
    cells: tuple[Cell, ...]
    detail: str = ""

    def as_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"rule": str(self.rule), "cells": list(self.cells)}
        if self.detail:
            payload["detail"] = self.detail
        return payload


def _check_faces(raw: HDA) -> None:
    for kind in FACE_KINDS:
        maps = raw.sources if kind == FaceMap.SOURCE else raw.targets
        for (cell, i), face in sorted(maps.items()):
            for end in (cell, face):
                if end not in raw.dims:
                    raise CellNotFound(cell=end)
            if not 1 <= i <= raw.dims[cell] or raw.dims[face] != raw.dims[cell] - 1:
                raise StructureError(
                    "Face %(kind)s_%(i)s of %(cell)s does not lead one dimension down.",
                    kind=str(kind),
                    i=i,
                    cell=cell,
                )


def _check_totality(raw: HDA, lenient: bool) -> bool:
    degenerate = False
    for cell in raw.cells():
        for i, kind in product(range(1, raw.dims[cell] + 1), FACE_KINDS):
            if raw.face(kind, cell, i) is None:
                if not lenient:
                    raise PartialMap(kind=str(kind), i=i, cell=cell)
                degenerate = True
    return degenerate


def _check_cubical_laws(raw: HDA) -> None:
    """α_i ∘ β_j = β_{j-1} ∘ α_i for every i < j, on every cell where both sides exist."""

    for cell in raw.cells():
        n = raw.dims[cell]
        for j in range(2, n + 1):
            for i in range(1, j):
                for alpha, beta in product(FACE_KINDS, FACE_KINDS):
                    left = raw.face(alpha, raw.face(beta, cell, j), i)
                    right = raw.face(beta, raw.face(alpha, cell, i), j - 1)
                    if left is None or right is None:
                        continue
                    if left != right:
                        raise CubicalLawViolation(
                            alpha=str(alpha), i=i, beta=str(beta), j=j, cell=cell
                        )


def _check_labels(raw: HDA) -> None:
    for cell in sorted(raw.labeling):
        if raw.dims.get(cell) != 1:
            raise StructureError("Only transitions carry labels, not %(cell)s.", cell=cell)
    for cell in raw.cells(1):
        if cell not in raw.labeling:
            raise StructureError("Transition %(cell)s has no label.", cell=cell)
    for cell in raw.cells(2):
        for i in (1, 2):
            source, target = raw.s(cell, i), raw.t(cell, i)
            if source is None or target is None:
                continue
            if raw.labeling[source] != raw.labeling[target]:
                raise LabelMismatch(cell=cell)


def validate_hda(raw: HDA, *, lenient: bool = False) -> HDA:
    """
    Check faces, totality, the cubical laws and label coherence, then prune
    everything unreachable from the initial state.
    """

    if raw.initial is None or raw.dims.get(raw.initial) != 0:
        raise NoInitial()
    _check_faces(raw)
    degenerate = _check_totality(raw, lenient)
    _check_cubical_laws(raw)
    _check_labels(raw)
    for cell in sorted(raw.finals):
        if raw.dims.get(cell) != 0:
            raise StructureError("Final cell %(cell)s is not a state.", cell=cell)

    h = HDA(raw.dims, raw.sources, raw.targets, raw.labeling, raw.initial, raw.finals, degenerate)
    reachable = reachable_cells(h)
    if len(reachable) < len(h):
        logger.warning("Pruned %d unreachable cells", len(h) - len(reachable))
        h = h.restrict(reachable)
    if degenerate:
        logger.info("Loaded a degenerate HDA with %d cells", len(h))
    return h


def load_lenient(raw: HDA) -> HDA:
    """Accept partial face maps; the result is tagged degenerate."""

    return validate_hda(raw, lenient=True)


def hda(
    states: Iterable[Cell],
    faces: Mapping[Cell, tuple[Sequence[Cell | None], Sequence[Cell | None]]],
    labels: Mapping[Cell, Label],
    initial: Cell,
    finals: Iterable[Cell] = (),
    *,
    lenient: bool = False,
) -> HDA:
    """
    Build and validate an HDA from per-cell face lists.

    ``faces[q] = ((s_1(q), ..., s_n(q)), (t_1(q), ..., t_n(q)))`` fixes both the
    dimension of ``q`` and its maps; ``None`` entries leave a map undefined.
    """

    dims = {state: 0 for state in states}
    sources: dict[tuple[Cell, int], Cell] = {}
    targets: dict[tuple[Cell, int], Cell] = {}
    for cell, (lower, upper) in faces.items():
        dims[cell] = max(len(lower), len(upper))
        for i, face in enumerate(lower, start=1):
            if face is not None:
                sources[(cell, i)] = face
        for i, face in enumerate(upper, start=1):
            if face is not None:
                targets[(cell, i)] = face
    return validate_hda(
        HDA(dims, sources, targets, labels, initial, frozenset(finals)), lenient=lenient
    )


def hda_step_graph(h: HDA) -> nx.MultiDiGraph:
    """Cells as nodes; an s-step runs from a face up to its cell, a t-step down to the face."""

    graph = nx.MultiDiGraph()
    for cell in h.cells():
        graph.add_node(cell, dim=h.dims[cell])
    for (cell, i), face in sorted(h.sources.items()):
        graph.add_edge(face, cell, key=("s", i), kind=FaceMap.SOURCE, index=i)
    for (cell, i), face in sorted(h.targets.items()):
        graph.add_edge(cell, face, key=("t", i), kind=FaceMap.TARGET, index=i)
    return graph


def reachable_cells(h: HDA) -> list[Cell]:
    if h.initial not in h:
        return []
    reachable = nx.descendants(hda_step_graph(h), h.initial) | {h.initial}
    return sorted(reachable, key=h.key)


def is_acyclic(h: HDA) -> tuple[bool, tuple[Cell, ...]]:
    """Acyclicity of the step graph, with the cells of one cycle when it fails."""

    try:
        cycle = nx.find_cycle(hda_step_graph(h))
    except nx.NetworkXNoCycle:
        return True, ()
    return False, tuple(edge[0] for edge in cycle)


def is_non_degenerate(h: HDA) -> tuple[bool, HDAWitness | None]:
    for cell in h.cells():
        n = h.dims[cell]
        for i, kind in product(range(1, n + 1), FACE_KINDS):
            if h.face(kind, cell, i) is None:
                return False, HDAWitness(NonDegeneracyRule.MISSING_FACE, (cell,), f"{kind}_{i}")
        for i, j in product(range(1, n + 1), repeat=2):
            if i == j:
                continue
            for alpha, beta in product(FACE_KINDS, FACE_KINDS):
                face = h.face(alpha, cell, i)
                if face == h.face(beta, cell, j):
                    return False, HDAWitness(
                        NonDegeneracyRule.EQUAL_FACES, (cell, face), f"{alpha}_{i}={beta}_{j}"
                    )
    ends: dict[tuple[Label, Cell | None, Cell | None], Cell] = {}
    for cell in h.cells(1):
        signature = (h.labeling.get(cell), h.s(cell, 1), h.t(cell, 1))
        if signature in ends:
            witness = (ends[signature], cell)
            return False, HDAWitness(NonDegeneracyRule.PARALLEL_TRANSITIONS, witness)
        ends[signature] = cell
    return True, None


def require_well_behaved(h: HDA, *, acyclic: bool = True) -> None:
    """Refuse degenerate, and optionally cyclic, HDAs."""

    if h.degenerate or not is_non_degenerate(h)[0]:
        raise PreconditionViolated(flag=PropertyFlag.NON_DEGENERATE)
    if acyclic and not is_acyclic(h)[0]:
        raise PreconditionViolated(flag=PropertyFlag.ACYCLIC)
