"""
Translations between ST-structures and HDAs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Mapping

from django.conf import settings
from networkx.utils import UnionFind

from src.core.models import ValidationMode
from src.core.structures import EMPTY, Event, Label, STConfig, STStructure, validate_st
from src.hda.cells import HDA, Cell, require_well_behaved, validate_hda
from src.hda.models import FaceMap
from src.hda.paths import HDAPath, face_path, rooted_paths
from src.related.translations import require_translatable
from src.sculpting.listing import EventListing

logger = logging.getLogger(__name__)

__all__ = [
    "EventClass",
    "stintoh",
    "cell_id",
    "event_classes",
    "hintost",
    "configs_by_paths",
]


def cell_id(config: STConfig) -> Cell:
    return str(config)


def stintoh(st: STStructure, listing: EventListing | None = None) -> HDA:
    """
    One cell per configuration, of dimension |S∖T|; s_i unstarts and t_i
    terminates the i-th running event in listing order.
    """

    require_translatable(st)
    listing = listing or EventListing.default(st.events)
    dims: dict[Cell, int] = {}
    sources: dict[tuple[Cell, int], Cell] = {}
    targets: dict[tuple[Cell, int], Cell] = {}
    labeling: dict[Cell, Label] = {}
    for config in st.sorted_configs():
        cell = cell_id(config)
        running = listing.restrict(config.running)
        dims[cell] = len(running)
        for i, event in enumerate(running, start=1):
            if config.unstart(event) in st:
                sources[(cell, i)] = cell_id(config.unstart(event))
            if config.terminate(event) in st:
                targets[(cell, i)] = cell_id(config.terminate(event))
        if len(running) == 1:
            labeling[cell] = st.label(running[1])
    return validate_hda(HDA(dims, sources, targets, labeling, cell_id(EMPTY)))


@dataclass(frozen=True)
class EventClass:
    """Transitions identified through opposite faces of squares."""

    name: Event
    label: Label
    members: frozenset[Cell]


def event_classes(h: HDA) -> list[EventClass]:
    """
    Classes of transitions under q ~ q' iff s_i(q2) = q and t_i(q2) = q' for a
    square q2; a class is named by its label, numbered when the label repeats.
    """

    classes = UnionFind(h.cells(1))
    for square in h.cells(2):
        for i in (1, 2):
            classes.union(h.s(square, i), h.t(square, i))
    groups = sorted(
        (sorted(group, key=h.key) for group in classes.to_sets()),
        key=lambda group: h.key(group[0]),
    )
    per_label: dict[Label, int] = {}
    for group in groups:
        per_label[h.label(group[0])] = per_label.get(h.label(group[0]), 0) + 1
    seen: dict[Label, int] = {}
    found = []
    for group in groups:
        label = h.label(group[0])
        seen[label] = seen.get(label, 0) + 1
        name = label if per_label[label] == 1 else f"{label}{seen[label]}"
        found.append(EventClass(name, label, frozenset(group)))
    return found


def configs_by_paths(
    h: HDA, event_of: Callable[[Cell], Event], *, budget: int | None = None
) -> dict[HDAPath, STConfig]:
    """
    The ST-configuration of every rooted path: the empty path gives (∅,∅); a
    path into a transition adds its event to S; a t-step into a state adds the
    event it ends to T; a path into a higher cell joins the configurations of
    its paths to s_1 and s_2.
    """

    memo: dict[HDAPath, STConfig] = {}

    def config_of(path: HDAPath) -> STConfig:
        if path in memo:
            return memo[path]
        end = path.end
        dim = h.dims[end]
        if not path.steps:
            config = EMPTY
        elif dim == 0:
            last = path.steps[-1]
            below = config_of(path.prefix)
            config = STConfig(below.started, below.terminated | {event_of(last.source)})
        elif dim == 1:
            below = config_of(face_path(h, path, FaceMap.SOURCE, 1))
            config = STConfig(below.started | {event_of(end)}, below.terminated)
        else:
            first = config_of(face_path(h, path, FaceMap.SOURCE, 1))
            second = config_of(face_path(h, path, FaceMap.SOURCE, 2))
            config = first.union(second)
            if settings.DEBUG and dim > 2:
                third = config_of(face_path(h, path, FaceMap.SOURCE, 3))
                if first.union(third) != config:
                    logger.warning("Face choice changes the configuration of %s", path)
        memo[path] = config
        return config

    for path in rooted_paths(h, budget=budget):
        config_of(path)
    return memo


def _st(
    events: Mapping[Event, Label], configs: set[STConfig]
) -> STStructure:
    return validate_st(events, configs, events, mode=ValidationMode.STRICT)


def hintost(h: HDA, *, budget: int | None = None) -> STStructure:
    """Events are transition classes; configurations come from rooted paths."""

    require_well_behaved(h)
    classes = event_classes(h)
    event_of = {cell: event.name for event in classes for cell in event.members}
    configs = set(configs_by_paths(h, event_of.__getitem__, budget=budget).values())
    logger.debug("hintost: %d events, %d configurations", len(classes), len(configs))
    return _st({event.name: event.label for event in classes}, configs)
