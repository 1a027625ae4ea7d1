"""
Steps, rooted paths and ST-traces of ST-structures.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

import networkx as nx
from django.conf import settings

from src.core.exceptions import ConfigNotInStructure, NotRooted, TargetNotInStructure
from src.core.models import StepKind
from src.core.structures import EMPTY, Event, Label, STConfig, STStructure

logger = logging.getLogger(__name__)

__all__ = [
    "Step",
    "Path",
    "STTrace",
    "steps_from",
    "sub_configs",
    "step_graph",
    "enumerate_rooted_paths",
    "iter_rooted_paths",
    "st_trace",
    "trace_set",
    "reachable_part",
]


@dataclass(frozen=True)
class Step:
    source: STConfig
    target: STConfig
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


@dataclass(frozen=True)
class Path:
    """A contiguous sequence of steps; ``start`` anchors the empty path."""

    steps: tuple[Step, ...] = ()
    start: STConfig = EMPTY

    def __post_init__(self) -> None:
        if self.steps and self.steps[0].source != self.start:
            object.__setattr__(self, "start", self.steps[0].source)
        for previous, following in zip(self.steps, self.steps[1:]):
            if previous.target != following.source:
                raise ValueError(f"Steps {previous} and {following} are not contiguous.")

    @property
    def rooted(self) -> bool:
        return self.start == EMPTY

    @property
    def end(self) -> STConfig:
        return self.steps[-1].target if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def extend(self, step: Step) -> Path:
        return Path(self.steps + (step,), self.start)

    def __str__(self) -> str:
        return " ".join(str(step) for step in self.steps) or "ε"


@dataclass(frozen=True)
class STTrace:
    """Labels annotated with 0 for starts and the matching start position for ends."""

    entries: tuple[tuple[Label, int], ...] = ()

    def __str__(self) -> str:
        return " ".join(f"{label}^{mark}" for label, mark in self.entries)

    def as_json(self) -> list[list]:
        return [[label, mark] for label, mark in self.entries]


def _require(st: STStructure, config: STConfig) -> None:
    if config not in st:
        raise ConfigNotInStructure(config=config)


def steps_from(st: STStructure, config: STConfig) -> list[Step]:
    """All single steps leaving ``config``; starts first, each kind by event id."""

    _require(st, config)
    steps: list[Step] = []
    for event in st.sorted_events():
        if event in config.started:
            continue
        target = config.start(event)
        if target in st:
            steps.append(Step(config, target, StepKind.START, event, st.label(event)))
    for event in sorted(config.running):
        target = config.terminate(event)
        if target in st:
            steps.append(Step(config, target, StepKind.TERMINATE, event, st.label(event)))
    return steps


def sub_configs(st: STStructure, config: STConfig) -> list[STConfig]:
    return [candidate for candidate in st.sorted_configs() if candidate.issubset(config)]


def step_graph(st: STStructure) -> nx.DiGraph:
    """Configurations as nodes, single steps as edges carrying kind, event and label."""

    graph = nx.DiGraph()
    for config in st.sorted_configs():
        graph.add_node(config)
    for config in st.sorted_configs():
        for step in steps_from(st, config):
            graph.add_edge(
                step.source, step.target, kind=step.kind, event=step.event, label=step.label
            )
    return graph


def iter_rooted_paths(st: STStructure, target: STConfig) -> Iterator[Path]:
    """Depth-first over steps that stay inside ``target``; empty when st is unrooted."""

    if EMPTY not in st:
        return

    def walk(path: Path) -> Iterator[Path]:
        if path.end == target:
            yield path
            return
        for step in steps_from(st, path.end):
            if step.target.issubset(target):
                yield from walk(path.extend(step))

    yield from walk(Path())


def enumerate_rooted_paths(
    st: STStructure, target: STConfig, bound: int | None = None
) -> list[Path]:
    """
    Return rooted paths ending in ``target``, at most ``bound`` of them.
    """

    if target not in st:
        raise TargetNotInStructure(config=target)
    bound = bound if bound is not None else settings.TRUECC_BUDGET
    paths: list[Path] = []
    for path in iter_rooted_paths(st, target):
        if len(paths) >= bound:
            logger.debug("Path enumeration to %s stopped at bound %d", target, bound)
            break
        paths.append(path)
    return paths


def st_trace(path: Path) -> STTrace:
    if not path.rooted:
        raise NotRooted(detail=f"path starts in {path.start}")
    started_at: dict[Event, int] = {}
    entries: list[tuple[Label, int]] = []
    for position, step in enumerate(path.steps, start=1):
        if step.kind == StepKind.START:
            started_at[step.event] = position
            entries.append((step.label, 0))
        else:
            entries.append((step.label, started_at[step.event]))
    return STTrace(tuple(entries))


def trace_set(st: STStructure, *, budget: int | None = None) -> frozenset[STTrace]:
    """ST-traces of every rooted path of ``st`` (prefixes included)."""

    budget = budget if budget is not None else settings.TRUECC_BUDGET
    traces: set[STTrace] = set()
    visited = 0
    for config in st.sorted_configs():
        for path in iter_rooted_paths(st, config):
            visited += 1
            if visited > budget:
                logger.debug("Trace enumeration stopped after %d paths", budget)
                return frozenset(traces)
            traces.add(st_trace(path))
    return frozenset(traces)


def reachable_part(st: STStructure) -> STStructure:
    if EMPTY not in st:
        return st.with_configs(())
    reachable = nx.descendants(step_graph(st), EMPTY) | {EMPTY}
    return st.with_configs(reachable)
