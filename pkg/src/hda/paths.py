"""
Paths, adjacency and homotopy (histories) in HDAs.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterator

import networkx as nx
from django.conf import settings
from networkx.utils import UnionFind

from src.core.exceptions import CellNotFound, CyclicInput, SearchBudgetExceeded
from src.hda.cells import HDA, Cell, hda_step_graph, is_acyclic
from src.hda.models import FaceMap

logger = logging.getLogger(__name__)

__all__ = [
    "HDAStep",
    "HDAPath",
    "HomotopyClass",
    "hda_steps_from",
    "hda_paths",
    "rooted_paths",
    "adjacent_paths",
    "adjacent",
    "homotopy_class",
    "rooted_histories",
    "face_path",
    "require_acyclic",
]

S, T = FaceMap.SOURCE, FaceMap.TARGET


@dataclass(frozen=True)
class HDAStep:
    source: Cell
    target: Cell
    kind: str
    index: int

    @property
    def higher(self) -> Cell:
        """The cell whose event the step starts or terminates."""

        return self.target if self.kind == S else self.source

    def __str__(self) -> str:
        return f"{self.kind}{self.index}:{self.target}"

    def as_json(self) -> dict[str, object]:
        return {
            "source": self.source,
            "target": self.target,
            "kind": str(self.kind),
            "index": self.index,
        }


@dataclass(frozen=True)
class HDAPath:
    start: Cell
    steps: tuple[HDAStep, ...] = ()

    def __post_init__(self) -> None:
        previous = self.start
        for step in self.steps:
            if step.source != previous:
                raise ValueError(f"Step {step} does not continue from {previous}.")
            previous = step.target

    @property
    def end(self) -> Cell:
        return self.steps[-1].target if self.steps else self.start

    @property
    def cells(self) -> tuple[Cell, ...]:
        return (self.start,) + tuple(step.target for step in self.steps)

    @property
    def prefix(self) -> HDAPath:
        return HDAPath(self.start, self.steps[:-1])

    def __len__(self) -> int:
        return len(self.steps)

    def extend(self, step: HDAStep) -> HDAPath:
        return HDAPath(self.start, self.steps + (step,))

    def sort_key(self) -> tuple:
        return (len(self.steps), tuple((str(s.kind), s.index, s.target) for s in self.steps))

    def __str__(self) -> str:
        return " ".join(str(step) for step in self.steps) or "ε"

    def as_json(self) -> dict[str, object]:
        return {"start": self.start, "steps": [step.as_json() for step in self.steps]}


@dataclass(frozen=True)
class HomotopyClass:
    representative: HDAPath
    members: frozenset[HDAPath]

    @property
    def end(self) -> Cell:
        return self.representative.end

    def __contains__(self, path: object) -> bool:
        return path in self.members

    def __len__(self) -> int:
        return len(self.members)


def _require_cell(h: HDA, cell: Cell) -> None:
    if cell not in h:
        raise CellNotFound(cell=cell)


def require_acyclic(h: HDA) -> None:
    acyclic, cycle = is_acyclic(h)
    if not acyclic:
        raise CyclicInput(cycle=list(cycle))


def hda_steps_from(h: HDA, cell: Cell) -> list[HDAStep]:
    """s-steps into cofaces first (ordered by coface), then t-steps by index."""

    _require_cell(h, cell)
    steps = [
        HDAStep(cell, coface, S, i) for coface, kind, i in h.cofaces(cell) if kind == S
    ]
    for i in range(1, h.dims[cell] + 1):
        face = h.t(cell, i)
        if face is not None:
            steps.append(HDAStep(cell, face, T, i))
    return steps


def hda_paths(
    h: HDA, source: Cell, target: Cell, bound: int | None = None
) -> list[HDAPath]:
    """
    Paths from ``source`` to ``target`` in depth-first order, at most ``bound`` of them.

    On cyclic HDAs paths are additionally cut at one step per cell.
    """

    _require_cell(h, source)
    _require_cell(h, target)
    bound = bound if bound is not None else settings.TRUECC_BUDGET
    graph = hda_step_graph(h)
    useful = nx.ancestors(graph, target) | {target}
    max_length = None if is_acyclic(h)[0] else len(h)
    found: list[HDAPath] = []

    def walk(path: HDAPath) -> Iterator[HDAPath]:
        if path.end == target:
            yield path
        if max_length is not None and len(path) >= max_length:
            return
        for step in hda_steps_from(h, path.end):
            if step.target in useful:
                yield from walk(path.extend(step))

    if source not in useful:
        return found
    for path in walk(HDAPath(source)):
        if len(found) >= bound:
            logger.debug("Path enumeration %s -> %s stopped at bound %d", source, target, bound)
            break
        found.append(path)
    return found


def rooted_paths(h: HDA, *, budget: int | None = None) -> list[HDAPath]:
    """Every path from the initial state of an acyclic HDA, prefixes included."""

    require_acyclic(h)
    budget = budget if budget is not None else settings.TRUECC_BUDGET
    found: list[HDAPath] = []
    stack = [HDAPath(h.initial)]
    while stack:
        path = stack.pop()
        found.append(path)
        if len(found) > budget:
            raise SearchBudgetExceeded(budget=budget)
        stack.extend(reversed([path.extend(step) for step in hda_steps_from(h, path.end)]))
    logger.debug("Enumerated %d rooted paths", len(found))
    return found


def _alternatives(h: HDA, first: HDAStep, second: HDAStep) -> list[tuple[HDAStep, HDAStep]]:
    """
    Two-step segments p -> q' -> r obtained from p -> q -> r by one of the four
    replacement rules, applied in either direction.
    """

    p, r = first.source, second.target
    a, b = first.index, second.index
    found: list[tuple[HDAStep, HDAStep]] = []

    def add(kind_one: str, one: int, middle: Cell | None, kind_two: str, two: int) -> None:
        if middle is None:
            return
        pair = (HDAStep(p, middle, kind_one, one), HDAStep(middle, r, kind_two, two))
        if pair != (first, second):
            found.append(pair)

    if first.kind == S and second.kind == S:
        if a < b:
            middle = h.s(r, a)
            if h.s(middle, b - 1) == p:
                add(S, b - 1, middle, S, a)
        else:
            middle = h.s(r, a + 1)
            if h.s(middle, b) == p:
                add(S, b, middle, S, a + 1)
    elif first.kind == T and second.kind == T:
        if b < a:
            middle = h.t(p, b)
            if h.t(middle, a - 1) == r:
                add(T, b, middle, T, a - 1)
        else:
            middle = h.t(p, b + 1)
            if h.t(middle, a) == r:
                add(T, b + 1, middle, T, a)
    elif first.kind == S:
        if a < b:
            middle = h.t(p, b - 1)
            if h.s(r, a) == middle:
                add(T, b - 1, middle, S, a)
        elif a > b:
            middle = h.t(p, b)
            if h.s(r, a - 1) == middle:
                add(T, b, middle, S, a - 1)
    else:
        shapes = ([(b, a + 1)] if b <= a else []) + ([(b + 1, a)] if a <= b else [])
        for up, down in shapes:
            for coface, kind, i in h.cofaces(p):
                if kind == S and i == up and h.t(coface, down) == r:
                    add(S, up, coface, T, down)
    return found


def adjacent_paths(h: HDA, path: HDAPath) -> Iterator[tuple[int, HDAPath]]:
    """``(position, other)`` for every path adjacent to ``path`` around its cell at ``position``."""

    for position in range(1, len(path)):
        before, after = path.steps[: position - 1], path.steps[position + 1 :]
        for one, two in _alternatives(h, path.steps[position - 1], path.steps[position]):
            yield position, HDAPath(path.start, before + (one, two) + after)


def adjacent(h: HDA, left: HDAPath, right: HDAPath) -> int | None:
    if left.start != right.start or len(left) != len(right) or left == right:
        return None
    for position, other in adjacent_paths(h, left):
        if other == right:
            return position
    return None


def homotopy_class(h: HDA, path: HDAPath, *, budget: int | None = None) -> HomotopyClass:
    """Reflexive-transitive closure of adjacency, by breadth-first search."""

    require_acyclic(h)
    budget = budget if budget is not None else settings.TRUECC_BUDGET
    members = {path}
    queue = deque([path])
    while queue:
        current = queue.popleft()
        for _, other in adjacent_paths(h, current):
            if other not in members:
                members.add(other)
                if len(members) > budget:
                    raise SearchBudgetExceeded(budget=budget)
                queue.append(other)
    return HomotopyClass(min(members, key=HDAPath.sort_key), frozenset(members))


def rooted_histories(
    h: HDA, *, budget: int | None = None
) -> dict[Cell, list[HomotopyClass]]:
    """Homotopy classes of rooted paths grouped by end cell, each list in canonical order."""

    paths = rooted_paths(h, budget=budget)
    known = set(paths)
    classes = UnionFind(paths)
    for path in paths:
        for _, other in adjacent_paths(h, path):
            if other in known:
                classes.union(path, other)
    grouped: dict[Cell, list[HomotopyClass]] = {}
    for members in classes.to_sets():
        members = frozenset(members)
        history = HomotopyClass(min(members, key=HDAPath.sort_key), members)
        grouped.setdefault(history.end, []).append(history)
    for histories in grouped.values():
        histories.sort(key=lambda history: history.representative.sort_key())
    return dict(sorted(grouped.items(), key=lambda item: h.key(item[0])))


def face_path(h: HDA, path: HDAPath, kind: str, i: int) -> HDAPath:
    """
    A rooted path to ``kind_i(path.end)`` built from ``path``.

    t-faces extend the path by one step. s-faces are found by walking back
    along the path and pushing the index through the cubical laws.
    """

    end = path.end
    if kind == T:
        return path.extend(HDAStep(end, h.t(end, i), T, i))
    if not path.steps:
        raise CellNotFound(cell=f"s_{i}({end})")
    last = path.steps[-1]
    before = path.prefix
    if last.kind == S:
        j = last.index
        if j == i:
            return before
        lower = face_path(h, before, S, i if i < j else i - 1)
        index = j - 1 if i < j else j
        return lower.extend(HDAStep(lower.end, h.s(end, i), S, index))
    k = last.index
    if i < k:
        upper = face_path(h, before, S, i)
        return upper.extend(HDAStep(upper.end, h.s(end, i), T, k - 1))
    upper = face_path(h, before, S, i + 1)
    return upper.extend(HDAStep(upper.end, h.s(end, i), T, k))
