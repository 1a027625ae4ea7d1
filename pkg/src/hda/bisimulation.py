"""
Hereditary history-preserving bisimulation of HDAs, as a relation on rooted paths.

Related paths must carry the same sequence of signed labels (a+ for an s-step
starting an a-event, a- for a t-step terminating one), so candidates are
grouped by that trace. A pair survives while it can match every forward
extension and every adjacency rewrite of either side, and while its prefixes
stay related.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

from django.conf import settings

from src.core.exceptions import SearchBudgetExceeded
from src.hda.cells import HDA, require_well_behaved
from src.hda.models import FaceMap
from src.hda.paths import HDAPath, HDAStep, adjacent_paths, hda_steps_from, rooted_paths

logger = logging.getLogger(__name__)

__all__ = ["HDABisimResult", "signed_label", "hda_hh_bisimilar"]

Pair = tuple[HDAPath, HDAPath]


@dataclass(frozen=True)
class HDABisimResult:
    verdict: bool
    relation: frozenset[Pair] = field(default_factory=frozenset)
    distinguishing: tuple[str, ...] = ()
    explored: int = 0

    def __bool__(self) -> bool:
        return self.verdict

    def as_json(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "mode": "hh",
            "relation_size": len(self.relation),
            "explored": self.explored,
            "distinguishing": list(self.distinguishing),
        }


def signed_label(h: HDA, step: HDAStep) -> str:
    sign = "+" if step.kind == FaceMap.SOURCE else "-"
    return f"{h.event_label(step.higher, step.index)}{sign}"


@dataclass
class _Moves:
    """Forward extensions keyed by signed label, and adjacency partners keyed by position."""

    forward: dict[str, list[HDAPath]]
    swaps: dict[int, list[HDAPath]]


def _moves(h: HDA, paths: list[HDAPath]) -> dict[HDAPath, _Moves]:
    moves = {}
    for path in paths:
        forward: dict[str, list[HDAPath]] = defaultdict(list)
        for step in hda_steps_from(h, path.end):
            forward[signed_label(h, step)].append(path.extend(step))
        swaps: dict[int, list[HDAPath]] = defaultdict(list)
        for position, other in adjacent_paths(h, path):
            swaps[position].append(other)
        moves[path] = _Moves(dict(forward), dict(swaps))
    return moves


def _key(pair: Pair) -> tuple:
    return (pair[0].sort_key(), pair[1].sort_key())


def hda_hh_bisimilar(h: HDA, g: HDA, *, budget: int | None = None) -> HDABisimResult:
    require_well_behaved(h)
    require_well_behaved(g)
    budget = budget if budget is not None else settings.TRUECC_BUDGET

    left_paths = rooted_paths(h, budget=budget)
    right_paths = rooted_paths(g, budget=budget)
    by_trace: dict[tuple[str, ...], list[HDAPath]] = defaultdict(list)
    for path in right_paths:
        by_trace[tuple(signed_label(g, step) for step in path.steps)].append(path)
    candidates: set[Pair] = set()
    for path in left_paths:
        for partner in by_trace.get(tuple(signed_label(h, step) for step in path.steps), []):
            candidates.add((path, partner))
            if len(candidates) > budget:
                raise SearchBudgetExceeded(budget=budget)
    logger.debug("hh-bisimulation over %d candidate path pairs", len(candidates))

    left_moves, right_moves = _moves(h, left_paths), _moves(g, right_paths)
    alive = set(candidates)
    removed: dict[Pair, tuple[int, str, list[Pair]]] = {}
    round_number = 0
    while True:
        round_number += 1
        failing = {}
        for pair in sorted(alive, key=_key):
            reason = _failure(pair, left_moves, right_moves, alive)
            if reason is not None:
                failing[pair] = (round_number, *reason)
        if not failing:
            break
        alive -= set(failing)
        removed.update(failing)

    root = (HDAPath(h.initial), HDAPath(g.initial))
    verdict = root in alive
    distinguishing = () if verdict else _distinguishing(root, removed)
    return HDABisimResult(verdict, frozenset(alive), distinguishing, len(candidates))


def _failure(
    pair: Pair,
    left_moves: dict[HDAPath, _Moves],
    right_moves: dict[HDAPath, _Moves],
    alive: set[Pair],
) -> tuple[str, list[Pair]] | None:
    left, right = pair
    if left.steps and (left.prefix, right.prefix) not in alive:
        return "undo", [(left.prefix, right.prefix)]
    mine, theirs = left_moves[left], right_moves[right]

    for label, extensions in sorted(mine.forward.items()):
        answers = theirs.forward.get(label, [])
        for extension in extensions:
            tried = [(extension, answer) for answer in answers]
            if not any(candidate in alive for candidate in tried):
                return f"left {label}", tried
    for label, extensions in sorted(theirs.forward.items()):
        answers = mine.forward.get(label, [])
        for extension in extensions:
            tried = [(answer, extension) for answer in answers]
            if not any(candidate in alive for candidate in tried):
                return f"right {label}", tried

    for position, partners in sorted(mine.swaps.items()):
        answers = theirs.swaps.get(position, [])
        for partner in partners:
            tried = [(partner, answer) for answer in answers]
            if not any(candidate in alive for candidate in tried):
                return f"left swap@{position}", tried
    for position, partners in sorted(theirs.swaps.items()):
        answers = mine.swaps.get(position, [])
        for partner in partners:
            tried = [(answer, partner) for answer in answers]
            if not any(candidate in alive for candidate in tried):
                return f"right swap@{position}", tried
    return None


def _distinguishing(
    root: Pair, removed: dict[Pair, tuple[int, str, list[Pair]]]
) -> tuple[str, ...]:
    sequence = []
    current: Pair | None = root
    seen = set()
    while current in removed and current not in seen:
        seen.add(current)
        _, reason, tried = removed[current]
        sequence.append(reason)
        answers = sorted(
            (answer for answer in tried if answer in removed),
            key=lambda answer: (removed[answer][0], _key(answer)),
        )
        current = answers[0] if answers else None
    return tuple(sequence)
