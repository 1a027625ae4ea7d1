"""
History unfolding: one cell per homotopy class of rooted paths.
"""

from __future__ import annotations

import logging

from src.hda.cells import HDA, Cell, require_well_behaved, validate_hda
from src.hda.models import FaceMap
from src.hda.paths import HDAPath, HomotopyClass, face_path, rooted_histories

logger = logging.getLogger(__name__)

__all__ = ["history_unfolding", "history_ids"]


def history_ids(histories: dict[Cell, list[HomotopyClass]]) -> dict[HomotopyClass, Cell]:
    """A cell keeps its id when it has one history; split cells become ``q#1``, ``q#2``, ..."""

    ids: dict[HomotopyClass, Cell] = {}
    for cell, classes in histories.items():
        if len(classes) == 1:
            ids[classes[0]] = cell
            continue
        for number, history in enumerate(classes, start=1):
            ids[history] = f"{cell}#{number}"
    return ids


def history_unfolding(h: HDA, *, budget: int | None = None) -> HDA:
    """
    s_i([π]) = [π'] where π' reaches s_i(q) and continues to π by an s-step;
    t_i([π]) = [π followed by the t-step on index i].
    """

    require_well_behaved(h)
    histories = rooted_histories(h, budget=budget)
    ids = history_ids(histories)
    owner: dict[HDAPath, Cell] = {
        path: ids[history] for history in ids for path in history.members
    }

    dims: dict[Cell, int] = {}
    sources: dict[tuple[Cell, int], Cell] = {}
    targets: dict[tuple[Cell, int], Cell] = {}
    labeling = {}
    for history, cell in ids.items():
        end = history.end
        dims[cell] = h.dims[end]
        if dims[cell] == 1:
            labeling[cell] = h.label(end)
        for i in range(1, dims[cell] + 1):
            sources[(cell, i)] = owner[face_path(h, history.representative, FaceMap.SOURCE, i)]
            targets[(cell, i)] = owner[face_path(h, history.representative, FaceMap.TARGET, i)]

    initial = owner[HDAPath(h.initial)]
    finals = frozenset(cell for history, cell in ids.items() if history.end in h.finals)
    split = sum(1 for classes in histories.values() if len(classes) > 1)
    if split:
        logger.info("History unfolding split %d cells", split)
    return validate_hda(HDA(dims, sources, targets, labeling, initial, finals))
