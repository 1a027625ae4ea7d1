"""
α-chains: sequences of face-map applications inside a bulk.

A chain is stored in application order, so ``AlphaChain((("t", 2), ("s", 1)))``
first applies t_2 and then s_1 to whatever cell it starts from.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from src.core.exceptions import LengthMismatch, PartialMap
from src.core.structures import STConfig
from src.hda.models import FaceMap
from src.sculpting.bulks import bulk_face
from src.sculpting.listing import EventListing
from src.sculpting.models import ChainOracle

logger = logging.getLogger(__name__)

__all__ = [
    "AlphaChain",
    "apply_chain",
    "chain_list",
    "chain_to",
    "alpha_chain_equiv",
    "chain_rewrite_closure",
]


@dataclass(frozen=True)
class AlphaChain:
    maps: tuple[tuple[str, int], ...] = ()

    @classmethod
    def parse(cls, text: str) -> AlphaChain:
        """``"s1 t2"`` applies s_1 first, then t_2."""

        return cls(tuple((token[0], int(token[1:])) for token in text.split()))

    @classmethod
    def of(cls, maps: Iterable[tuple[str, int]]) -> AlphaChain:
        return cls(tuple((str(kind), index) for kind, index in maps))

    @property
    def indexes(self) -> tuple[int, ...]:
        return tuple(index for _, index in self.maps)

    def applicable_from(self, n: int) -> bool:
        return all(1 <= index <= n - step for step, index in enumerate(self.indexes))

    def __len__(self) -> int:
        return len(self.maps)

    def __str__(self) -> str:
        return " ".join(f"{kind}{index}" for kind, index in self.maps) or "id"


def apply_chain(chain: AlphaChain, key: STConfig, listing: EventListing) -> STConfig:
    for kind, index in chain.maps:
        key = bulk_face(key, kind, index, listing)
    return key


def chain_list(chain: AlphaChain, listing: EventListing) -> EventListing:
    """Remove the event at each index in turn; kinds play no part."""

    for kind, index in chain.maps:
        if not 1 <= index <= len(listing):
            raise PartialMap(kind=kind, i=index, cell=str(listing))
        listing = listing.without(index)
    return listing


def chain_to(key: STConfig, listing: EventListing) -> AlphaChain:
    """A chain from the bulk top (E, ∅) down to ``key``: terminate T, then unstart E∖S."""

    current = STConfig(frozenset(listing), frozenset())
    maps: list[tuple[str, int]] = []
    for event in listing.restrict(key.terminated):
        maps.append((FaceMap.TARGET, listing.restrict(current.running).index(event)))
        current = current.terminate(event)
    for event in listing.restrict(frozenset(listing) - key.started):
        maps.append((FaceMap.SOURCE, listing.restrict(current.running).index(event)))
        current = current.unstart(event)
    return AlphaChain.of(maps)


def chain_rewrite_closure(chain: AlphaChain) -> frozenset[tuple[int, ...]]:
    """
    Index lists reachable by single cubical-law swaps: applying β_j then α_i
    equals applying α_i then β_{j-1} whenever i < j.
    """

    start = chain.indexes
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for position in range(len(current) - 1):
            first, second = current[position], current[position + 1]
            swapped = (second, first - 1) if second < first else (second + 1, first)
            following = current[:position] + swapped + current[position + 2 :]
            if following not in seen:
                seen.add(following)
                queue.append(following)
    return frozenset(seen)


def alpha_chain_equiv(
    a: AlphaChain, b: AlphaChain, n: int, *, oracle: str = ChainOracle.LIST_RULE
) -> bool:
    if len(a) != len(b):
        raise LengthMismatch(left=len(a), right=len(b))
    for chain in (a, b):
        if not chain.applicable_from(n):
            raise PartialMap(kind="α", i=max(chain.indexes), cell=f"dimension {n}")
    if oracle == ChainOracle.REWRITES:
        return b.indexes in chain_rewrite_closure(a)
    listing = EventListing.numbered(n)
    return chain_list(a, listing) == chain_list(b, listing)
