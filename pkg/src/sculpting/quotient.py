from __future__ import annotations

import logging
from typing import Iterable

from src.core.exceptions import LabelConflictInClass, StructureError
from src.core.structures import Event, STStructure, validate_st

logger = logging.getLogger(__name__)

__all__ = ["quotient_events"]


def quotient_events(st: STStructure, partition: Iterable[Iterable[Event]]) -> STStructure:
    """
    Identify the events of each class of ``partition``; a class is named by its
    smallest member and events left out stay on their own.
    """

    name: dict[Event, Event] = {event: event for event in st.events}
    for group in partition:
        members = sorted(group)
        if not members:
            continue
        unknown = [event for event in members if event not in st.events]
        if unknown:
            raise StructureError("Event %(event)s is not part of the structure.", event=unknown[0])
        labels = sorted({st.label(event) for event in members})
        if len(labels) > 1:
            raise LabelConflictInClass(events=members, labels=labels)
        for event in members:
            name[event] = members[0]
    configs = {config.rename(name) for config in st.configs}
    labeling = {name[event]: st.label(event) for event in st.events}
    logger.debug("Quotient keeps %d of %d events", len(set(name.values())), len(st.events))
    return validate_st(set(name.values()), configs, labeling, mode=st.mode)
