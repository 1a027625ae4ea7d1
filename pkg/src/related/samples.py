"""
Named configuration and inpure event structures.
"""

from __future__ import annotations

from src.related.structures import (
    ConfigStructure,
    InpureEventStructure,
    config_structure,
    event_structure,
    subsets,
)

__all__ = [
    "concurrent_pair",
    "sequential_pair",
    "asymmetric_conflict_events",
    "independent_events",
    "trivial_events",
]


def concurrent_pair() -> ConfigStructure:
    return config_structure([(), "a", "b", "ab"])


def sequential_pair() -> ConfigStructure:
    return config_structure([(), "a", "ab"])


def asymmetric_conflict_events() -> InpureEventStructure:
    """s and b both possible, but b only before s."""

    return event_structure([((), ()), ((), "b"), ((), "s"), ("b", "bs")])


def independent_events() -> InpureEventStructure:
    """a and b with every subset enabled from the start."""

    return event_structure([((), subset) for subset in subsets("ab")])


def trivial_events() -> InpureEventStructure:
    return event_structure([((), ())])
