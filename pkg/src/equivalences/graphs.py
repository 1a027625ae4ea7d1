"""
Brute-force oracles the test suites compare the real implementations against.
"""

from __future__ import annotations

import networkx as nx

from src.core.models import StepKind
from src.core.structures import EMPTY, STConfig, STStructure

__all__ = ["oracle_step_graph", "oracle_rooted_path_count"]


def _difference(source: STConfig, target: STConfig) -> tuple[str, str] | None:
    added_started = target.started - source.started
    added_terminated = target.terminated - source.terminated
    if not (source.started <= target.started and source.terminated <= target.terminated):
        return None
    if len(added_started) == 1 and not added_terminated:
        return StepKind.START, next(iter(added_started))
    if len(added_terminated) == 1 and not added_started:
        return StepKind.TERMINATE, next(iter(added_terminated))
    return None


def oracle_step_graph(st: STStructure) -> nx.DiGraph:
    """Compare every ordered pair of configurations; no use of ``steps_from``."""

    graph = nx.DiGraph()
    ordered = st.sorted_configs()
    graph.add_nodes_from(ordered)
    for source in ordered:
        for target in ordered:
            step = _difference(source, target)
            if step is not None:
                kind, event = step
                graph.add_edge(source, target, kind=kind, event=event, label=st.label(event))
    return graph


def oracle_rooted_path_count(st: STStructure, target: STConfig) -> int:
    graph = oracle_step_graph(st)
    if EMPTY not in graph or target not in graph:
        return 0
    if target == EMPTY:
        return 1
    return sum(1 for _ in nx.all_simple_paths(graph, EMPTY, target))
