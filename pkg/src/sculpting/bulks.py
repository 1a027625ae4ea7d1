"""
Bulks: the full n-cube with every face, one cell b^(S,T) per pair T ⊆ S ⊆ E.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from django.conf import settings

from src.core.exceptions import DimensionCap, PartialMap
from src.core.models import ValidationMode
from src.core.structures import Event, Label, STConfig, validate_st
from src.hda.cells import HDA, Cell
from src.hda.models import FaceMap
from src.related.structures import subsets
from src.sculpting.listing import EventListing
from src.sculpting.translations import cell_id, stintoh

logger = logging.getLogger(__name__)

__all__ = ["Bulk", "make_bulk", "bulk_face"]


@dataclass(frozen=True)
class Bulk:
    hda: HDA
    listing: EventListing
    keys: Mapping[Cell, STConfig] = field(hash=False)

    @property
    def dim(self) -> int:
        return len(self.listing)

    @property
    def events(self) -> frozenset[Event]:
        return frozenset(self.listing)

    @property
    def top(self) -> Cell:
        return cell_id(STConfig(self.events, frozenset()))

    def cell(self, key: STConfig) -> Cell:
        return cell_id(key)

    def axis_label(self, event: Event) -> Label:
        return self.hda.label(cell_id(STConfig(frozenset({event}), frozenset())))


def bulk_face(key: STConfig, kind: str, i: int, listing: EventListing) -> STConfig:
    """Unstart (s) or terminate (t) the i-th running event of ``key``."""

    running = listing.restrict(key.running)
    if not 1 <= i <= len(running):
        raise PartialMap(kind=str(kind), i=i, cell=str(key))
    event = running[i]
    return key.unstart(event) if kind == FaceMap.SOURCE else key.terminate(event)


def make_bulk(
    n: int,
    listing: EventListing | None = None,
    labels: Mapping[Event, Label] | None = None,
    *,
    cap: int | None = None,
) -> Bulk:
    cap = cap if cap is not None else settings.TRUECC_SCULPTURE_MAX_DIM
    if n > cap:
        raise DimensionCap(dim=n, cap=cap)
    listing = listing or EventListing.numbered(n)
    if len(listing) != n:
        raise ValueError(f"A bulk of dimension {n} needs {n} listed events, got {len(listing)}.")
    configs = [
        STConfig(started, terminated)
        for started in subsets(listing)
        for terminated in subsets(started)
    ]
    full = validate_st(listing, configs, labels, mode=ValidationMode.STRICT)
    logger.debug("Built a %d-dimensional bulk with %d cells", n, len(configs))
    return Bulk(stintoh(full, listing), listing, {cell_id(key): key for key in configs})
