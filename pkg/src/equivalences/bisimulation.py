"""
History-preserving (h) and hereditary history-preserving (hh) bisimulation.

Both are decided as greatest fixpoints over the triples reachable from
(∅, ∅, ∅) by matching steps: triples that cannot answer a challenge are removed
round by round until the relation is stable. The removal rounds give the
distinguishing sequence reported on failure.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable

from django.conf import settings

from src.core.exceptions import NotRooted, SearchBudgetExceeded
from src.core.models import StepKind
from src.core.structures import EMPTY, Event, Label, STConfig, STStructure
from src.equivalences.isomorphism import EventBijection
from src.related.structures import ConfigStructure

logger = logging.getLogger(__name__)

__all__ = [
    "BisimTriple",
    "BisimResult",
    "TransitionSystem",
    "st_system",
    "config_system",
    "decide_bisimulation",
    "st_h_bisimilar",
    "st_hh_bisimilar",
    "config_hh_bisimilar",
]

Move = tuple[str, Event, STConfig]


@dataclass(frozen=True)
class BisimTriple:
    """Two configurations and an isomorphism between them (S onto S', T onto T')."""

    left: STConfig
    right: STConfig
    iso: EventBijection = EventBijection()

    def as_json(self) -> dict[str, Any]:
        return {"left": str(self.left), "right": str(self.right), "iso": self.iso.as_json()}

    def __str__(self) -> str:
        return f"({self.left}, {self.right}, {self.iso})"


ROOT = BisimTriple(EMPTY, EMPTY)


@dataclass(frozen=True)
class TransitionSystem:
    """Forward and backward single steps over ST-configurations, plus labels."""

    nodes: frozenset[STConfig]
    label: Callable[[Event], Label]
    forward: Callable[[STConfig], list[Move]]
    backward: Callable[[STConfig], list[Move]]


@dataclass(frozen=True)
class BisimResult:
    verdict: bool
    mode: str
    relation: frozenset[BisimTriple] = field(default_factory=frozenset)
    distinguishing: tuple[str, ...] = ()
    explored: int = 0

    def __bool__(self) -> bool:
        return self.verdict

    def as_json(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "relation_size": len(self.relation),
            "explored": self.explored,
            "distinguishing": list(self.distinguishing),
        }


def st_system(st: STStructure) -> TransitionSystem:
    def forward(config: STConfig) -> list[Move]:
        moves = [
            (StepKind.START, event, config.start(event))
            for event in st.sorted_events()
            if event not in config.started and config.start(event) in st
        ]
        moves += [
            (StepKind.TERMINATE, event, config.terminate(event))
            for event in sorted(config.running)
            if config.terminate(event) in st
        ]
        return moves

    def backward(config: STConfig) -> list[Move]:
        moves = [
            (StepKind.START, event, config.unstart(event))
            for event in sorted(config.running)
            if config.unstart(event) in st
        ]
        moves += [
            (StepKind.TERMINATE, event, config.unterminate(event))
            for event in sorted(config.terminated)
            if config.unterminate(event) in st
        ]
        return moves

    return TransitionSystem(st.configs, st.label, forward, backward)


def config_system(c: ConfigStructure) -> TransitionSystem:
    """Configurations X as corners (X, X); single-event steps X -> X ∪ {e}."""

    def forward(config: STConfig) -> list[Move]:
        return [
            (StepKind.START, event, STConfig(config.started | {event}, config.started | {event}))
            for event in sorted(c.events - config.started)
            if config.started | {event} in c
        ]

    def backward(config: STConfig) -> list[Move]:
        return [
            (StepKind.START, event, STConfig(config.started - {event}, config.started - {event}))
            for event in sorted(config.started)
            if config.started - {event} in c
        ]

    nodes = frozenset(STConfig(config, config) for config in c.configs)
    return TransitionSystem(nodes, c.labeling.__getitem__, forward, backward)


@dataclass
class _Challenges:
    """Matching moves of one triple, keyed by the challenged move."""

    left: dict[Move, list[BisimTriple]] = field(default_factory=dict)
    right: dict[Move, list[BisimTriple]] = field(default_factory=dict)
    back: dict[Move, list[BisimTriple]] = field(default_factory=dict)


def _challenges(
    triple: BisimTriple, a: TransitionSystem, b: TransitionSystem, hereditary: bool
) -> _Challenges:
    found = _Challenges()
    left_moves = a.forward(triple.left)
    right_moves = b.forward(triple.right)
    for move in left_moves:
        found.left[move] = []
    for move in right_moves:
        found.right[move] = []
    for left in left_moves:
        kind, event, target = left
        for right in right_moves:
            kind_b, event_b, target_b = right
            if kind != kind_b or a.label(event) != b.label(event_b):
                continue
            if kind == StepKind.START:
                iso = triple.iso.extend(event, event_b)
            elif triple.iso.mapping.get(event) == event_b:
                iso = triple.iso
            else:
                continue
            successor = BisimTriple(target, target_b, iso)
            found.left[left].append(successor)
            found.right[right].append(successor)
    if hereditary:
        mapping = triple.iso.mapping
        right_back = b.backward(triple.right)
        for move in a.backward(triple.left):
            kind, event, source = move
            found.back[move] = [
                BisimTriple(source, source_b, triple.iso.restrict(source.started))
                for kind_b, event_b, source_b in right_back
                if kind_b == kind and event_b == mapping[event]
            ]
    return found


def _describe(side: str, move: Move, backward: bool = False) -> str:
    kind, event, _ = move
    return f"{side} {'undo ' if backward else ''}{kind!s}:{event}"


def decide_bisimulation(
    a: TransitionSystem,
    b: TransitionSystem,
    *,
    hereditary: bool,
    budget: int | None = None,
) -> BisimResult:
    budget = budget if budget is not None else settings.TRUECC_BUDGET
    mode = "hh" if hereditary else "h"
    if EMPTY not in a.nodes or EMPTY not in b.nodes:
        raise NotRooted(detail="bisimulation starts from (∅,∅) on both sides")

    explored: dict[BisimTriple, _Challenges] = {}
    queue = deque([ROOT])
    while queue:
        triple = queue.popleft()
        if triple in explored:
            continue
        if len(explored) >= budget:
            raise SearchBudgetExceeded(budget=budget)
        explored[triple] = found = _challenges(triple, a, b, hereditary)
        for candidates in (*found.left.values(), *found.back.values()):
            queue.extend(candidate for candidate in candidates if candidate not in explored)
    logger.debug("Explored %d %s-bisimulation triples", len(explored), mode)

    alive = set(explored)
    removed: dict[BisimTriple, tuple[int, str, Move, bool]] = {}
    round_number = 0
    changed = True
    while changed:
        changed = False
        round_number += 1
        failing = {}
        for triple in sorted(alive, key=_triple_key):
            reason = _first_failure(explored[triple], alive)
            if reason is not None:
                failing[triple] = (round_number, *reason)
        if failing:
            changed = True
            alive -= set(failing)
            removed.update(failing)

    verdict = ROOT in alive
    if verdict and hereditary and settings.DEBUG:
        _check_right_backward(alive, a, b)
    distinguishing = () if verdict else _distinguishing(explored, removed)
    return BisimResult(verdict, mode, frozenset(alive), distinguishing, len(explored))


def _triple_key(triple: BisimTriple) -> tuple:
    return (triple.left.sort_key(), triple.right.sort_key(), triple.iso.pairs)


def _first_failure(found: _Challenges, alive: set[BisimTriple]) -> tuple[str, Move, bool] | None:
    for side, moves, backward in (
        ("left", found.left, False),
        ("right", found.right, False),
        ("left", found.back, True),
    ):
        for move, answers in moves.items():
            if not any(answer in alive for answer in answers):
                return side, move, backward
    return None


def _distinguishing(
    explored: dict[BisimTriple, _Challenges],
    removed: dict[BisimTriple, tuple[int, str, Move, bool]],
) -> tuple[str, ...]:
    sequence = []
    current = ROOT
    seen = set()
    while current in removed and current not in seen:
        seen.add(current)
        _, side, move, backward = removed[current]
        sequence.append(_describe(side, move, backward))
        found = explored[current]
        pool = (found.back if backward else found.left if side == "left" else found.right)[move]
        answers = sorted(
            (answer for answer in pool if answer in removed),
            key=lambda answer: (removed[answer][0], _triple_key(answer)),
        )
        if not answers:
            break
        current = answers[0]
    return tuple(sequence)


def _check_right_backward(
    alive: set[BisimTriple], a: TransitionSystem, b: TransitionSystem
) -> None:
    """The symmetric backward clause; it follows from the others on well-formed inputs."""

    for triple in sorted(alive, key=_triple_key):
        inverse = triple.iso.inverse
        for kind, event, source in b.backward(triple.right):
            partner = inverse.mapping[event]
            if not any(
                BisimTriple(left_source, source, triple.iso.restrict(left_source.started))
                in alive
                for left_kind, left_event, left_source in a.backward(triple.left)
                if left_kind == kind and left_event == partner
            ):
                logger.warning(
                    "Triple %s misses the right backward move %s:%s", triple, kind, event
                )


def st_h_bisimilar(a: STStructure, b: STStructure, *, budget: int | None = None) -> BisimResult:
    return decide_bisimulation(st_system(a), st_system(b), hereditary=False, budget=budget)


def st_hh_bisimilar(a: STStructure, b: STStructure, *, budget: int | None = None) -> BisimResult:
    return decide_bisimulation(st_system(a), st_system(b), hereditary=True, budget=budget)


def config_hh_bisimilar(
    c: ConfigStructure, d: ConfigStructure, *, budget: int | None = None
) -> BisimResult:
    """hh-bisimulation of configuration structures over single-event steps."""

    return decide_bisimulation(config_system(c), config_system(d), hereditary=True, budget=budget)
