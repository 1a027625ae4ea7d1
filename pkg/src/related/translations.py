"""
Translations between configuration structures, inpure event structures and ST-structures.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Mapping

from src.core.exceptions import NotStableInput, PreconditionViolated
from src.core.models import PropertyFlag, ValidationMode
from src.core.properties import is_adjacent_closed, is_connected, is_rooted
from src.core.structures import Event, STConfig, STStructure, validate_st
from src.related.structures import (
    ConfigStructure,
    InpureEventStructure,
    async_steps_config,
    async_steps_event,
    config_properties,
    left_closed_configs,
    subsets,
)

logger = logging.getLogger(__name__)

__all__ = [
    "cintost",
    "cintost2",
    "cintost3",
    "stintoc",
    "eintost",
    "stintoe",
    "require_translatable",
    "config_morphism_check",
    "map_st",
]


def _st(events, configs, labeling) -> STStructure:
    return validate_st(events, configs, labeling, mode=ValidationMode.STRICT)


def cintost(c: ConfigStructure) -> STStructure:
    """Corners only: (X, X) for every configuration X."""

    return _st(c.events, (STConfig(config, config) for config in c.configs), c.labeling)


def cintost2(c: ConfigStructure) -> STStructure:
    """Corners plus (Y, X) for every asynchronous step X -> Y."""

    configs = {STConfig(step.target, step.source) for step in async_steps_config(c)}
    return _st(c.events, configs, c.labeling)


def stintoc(st: STStructure) -> ConfigStructure:
    return ConfigStructure(
        st.events,
        frozenset(config.started for config in st.configs if config.is_diagonal),
        st.labeling,
    )


def _close_bounded(configs: set[STConfig]) -> set[STConfig]:
    closed = set(configs)
    changed = True
    while changed:
        changed = False
        ordered = sorted(closed, key=STConfig.sort_key)
        for left, right in combinations(ordered, 2):
            union = left.union(right)
            if not any(union.issubset(bound) for bound in ordered):
                continue
            for produced in (union, left.intersection(right)):
                if produced not in closed:
                    closed.add(produced)
                    changed = True
    return closed


def cintost3(c: ConfigStructure) -> STStructure:
    """
    Corners, one intermediate (T ∪ {e}, T) per one-event extension, then the
    closure under bounded unions and intersections.
    """

    properties = config_properties(c)
    if not properties.stable:
        raise NotStableInput(flag=properties.first_failure())
    configs = {STConfig(config, config) for config in c.configs}
    for lower in c.configs:
        for event in sorted(c.events - lower):
            if lower | {event} in c:
                configs.add(STConfig(lower | {event}, lower))
    return _st(c.events, _close_bounded(configs), c.labeling)


def eintost(e: InpureEventStructure) -> STStructure:
    configs = {STConfig(config, config) for config in left_closed_configs(e)}
    configs |= {STConfig(step.target, step.source) for step in async_steps_event(e)}
    return _st(e.events, configs, e.labeling)


def require_translatable(st: STStructure) -> None:
    """Reject structures that are not rooted, connected and adjacent-closed."""

    if not is_rooted(st):
        raise PreconditionViolated(flag=PropertyFlag.ROOTED)
    if not is_connected(st):
        raise PreconditionViolated(flag=PropertyFlag.CONNECTED)
    if not is_adjacent_closed(st)[0]:
        raise PreconditionViolated(flag=PropertyFlag.ADJACENT_CLOSED)


def stintoe(st: STStructure) -> InpureEventStructure:
    """
    Every configuration (S ∪ X, S) contributes S enabling X' ∪ Y for all
    X' ⊆ X and Y ⊆ S; the result is redundant, not minimal.
    """

    require_translatable(st)
    enabling = set()
    for config in st.sorted_configs():
        base = config.terminated
        for extra in subsets(config.running):
            for kept in subsets(base):
                enabling.add((base, extra | kept))
    logger.debug("Built %d enabling pairs from %d configurations", len(enabling), len(st))
    return InpureEventStructure(st.events, frozenset(enabling), st.labeling)


def config_morphism_check(
    mapping: Mapping[Event, Event], source: ConfigStructure, target: ConfigStructure
) -> bool:
    """Partial event map preserving configurations and labels, injective on each configuration."""

    for event, image in mapping.items():
        if source.labeling[event] != target.labeling.get(image):
            return False
    for config in source.sorted_configs():
        image = [mapping[event] for event in config if event in mapping]
        if len(set(image)) != len(image) or frozenset(image) not in target:
            return False
    return True


def map_st(st: STStructure, mapping: Mapping[Event, Event]) -> frozenset[STConfig]:
    """Images of the configurations of ``st`` under a partial event map."""

    return frozenset(
        STConfig(
            frozenset(mapping[event] for event in config.started if event in mapping),
            frozenset(mapping[event] for event in config.terminated if event in mapping),
        )
        for config in st.configs
    )
