"""
Graphviz text for step graphs, for rendering outside the workbench.
"""

from __future__ import annotations

import networkx as nx

from src.core.semantics import step_graph
from src.core.structures import STStructure
from src.hda.cells import HDA, hda_step_graph
from src.stc.steps import stc_steps
from src.stc.structures import STCStructure

__all__ = ["to_dot", "st_dot", "stc_dot", "hda_dot"]


def _quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: nx.DiGraph, name: str, node_label=str, edge_label=None) -> str:
    """Nodes and edges in insertion order, so the text is stable for a given graph."""

    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    ids = {node: f"n{position}" for position, node in enumerate(graph.nodes)}
    for node, node_id in ids.items():
        lines.append(f"  {node_id} [label={_quote(node_label(node))}];")
    for source, target, data in graph.edges(data=True):
        label = f" [label={_quote(edge_label(data))}]" if edge_label else ""
        lines.append(f"  {ids[source]} -> {ids[target]}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def st_dot(st: STStructure) -> str:
    return to_dot(step_graph(st), "st", edge_label=lambda data: f"{data['label']}{data['kind']}")


def stc_dot(stc: STCStructure) -> str:
    graph = nx.MultiDiGraph()
    for config in stc.sorted_configs():
        graph.add_node(config)
    for config in stc.sorted_configs():
        for step in stc_steps(stc, config):
            graph.add_edge(step.source, step.target, kind=str(step.kind), label=step.label)
    return to_dot(graph, "stc", edge_label=lambda data: f"{data['label']}:{data['kind']}")


def hda_dot(h: HDA) -> str:
    graph = hda_step_graph(h)
    return to_dot(
        graph,
        "hda",
        node_label=lambda cell: f"{cell} ({h.label(cell)})" if h.dims[cell] == 1 else cell,
        edge_label=lambda data: f"{data['kind']}{data['index']}",
    )
