"""
Action refinement: every event is replaced by a structure chosen by its label.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from math import prod
from types import MappingProxyType
from typing import Any, Mapping

from django.conf import settings

from src.core.exceptions import EmptyRefinementImage, SearchBudgetExceeded, StructureError
from src.core.models import ValidationMode
from src.core.structures import EMPTY, Event, Label, STConfig, STStructure, validate_st

logger = logging.getLogger(__name__)

__all__ = [
    "SEPARATOR",
    "RefinementFunction",
    "singleton_structure",
    "refined_event",
    "refine",
]

SEPARATOR = "."


def singleton_structure(label: Label) -> STStructure:
    """One event labelled ``label``: (∅,∅), running, finished."""

    started = frozenset({label})
    return validate_st(
        [label],
        [EMPTY, STConfig(started, frozenset()), STConfig(started, started)],
        {label: label},
        mode=ValidationMode.STRICT,
    )


def refined_event(event: Event, inner: Event) -> Event:
    return f"{event}{SEPARATOR}{inner}"


@dataclass(frozen=True)
class _Image:
    structure: STStructure
    running: tuple[STConfig, ...]
    finished: tuple[STConfig, ...]


def _split(label: Label, image: STStructure) -> _Image:
    nonempty = [config for config in image.sorted_configs() if config != EMPTY]
    if not nonempty:
        raise EmptyRefinementImage(label=label)
    maximal = [
        config
        for config in nonempty
        if not any(config != other and config.issubset(other) for other in nonempty)
    ]
    for config in maximal:
        if not config.is_diagonal:
            raise StructureError(
                "Maximal configuration %(config)s of the image of %(label)s is not diagonal.",
                config=config,
                label=label,
            )
    running = tuple(config for config in nonempty if config not in maximal)
    return _Image(image, running, tuple(maximal))


@dataclass(frozen=True)
class RefinementFunction:
    """
    Label -> replacement structure. Labels without an entry refine to the
    singleton structure carrying the same label.
    """

    images: Mapping[Label, STStructure] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if not isinstance(self.images, MappingProxyType):
            object.__setattr__(self, "images", MappingProxyType(dict(self.images)))
        for label, image in self.images.items():
            bad = [event for event in image.events if SEPARATOR in event]
            if bad:
                raise StructureError(
                    "Event %(event)s of the image of %(label)s uses the reserved separator.",
                    event=min(bad),
                    label=label,
                )
            if not any(config != EMPTY for config in image.configs):
                raise EmptyRefinementImage(label=label)

    @classmethod
    def for_labels(cls, images: Mapping[Label, STStructure]) -> RefinementFunction:
        return cls(images)

    def __getitem__(self, label: Label) -> STStructure:
        image = self.images.get(label)
        return image if image is not None else singleton_structure(label)

    def rename(self, mappings: Mapping[Label, Mapping[Event, Event]]) -> RefinementFunction:
        """Rename the events of each image; labels without a mapping are kept."""

        return RefinementFunction(
            {
                label: image.rename(mappings[label]) if label in mappings else image
                for label, image in self.images.items()
            }
        )

    def as_json(self) -> dict[str, Any]:
        return {label: str(image) for label, image in sorted(self.images.items())}


def _tag(event: Event, config: STConfig) -> STConfig:
    return STConfig(
        frozenset(refined_event(event, inner) for inner in config.started),
        frozenset(refined_event(event, inner) for inner in config.terminated),
    )


def refine(
    st: STStructure, r: RefinementFunction, *, budget: int | None = None
) -> STStructure:
    """
    Every configuration (S, T) becomes each union of one non-empty non-maximal
    image configuration per running event and one maximal image configuration
    per terminated event. Refined events are named ``event.inner``.
    """

    budget = budget if budget is not None else settings.TRUECC_BUDGET
    images = {label: _split(label, r[label]) for label in sorted(st.labels)}

    events: set[Event] = set()
    labeling: dict[Event, Label] = {}
    for event in st.sorted_events():
        image = images[st.label(event)].structure
        for inner in image.sorted_events():
            name = refined_event(event, inner)
            events.add(name)
            labeling[name] = image.label(inner)

    configs: set[STConfig] = set()
    produced = 0
    for config in st.sorted_configs():
        members = sorted(config.started)
        options = [
            images[st.label(event)].finished
            if event in config.terminated
            else images[st.label(event)].running
            for event in members
        ]
        produced += prod(len(choices) for choices in options)
        if produced > budget:
            raise SearchBudgetExceeded(budget=budget)
        for choice in product(*options):
            refined = EMPTY
            for event, inner in zip(members, choice):
                refined = refined.union(_tag(event, inner))
            configs.add(refined)

    logger.debug(
        "Refined %d configurations into %d (%d events)", len(st), len(configs), len(events)
    )
    return validate_st(events, configs, labeling, mode=st.mode)
