"""
Which structural properties survive a refinement, checked on the concrete instance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from src.core.properties import PropertyReport, property_report
from src.core.relations import cc_equivalent_structures
from src.core.semantics import trace_set
from src.core.structures import STStructure
from src.refinement.models import PreservationStatus
from src.refinement.refine import RefinementFunction, refine

logger = logging.getLogger(__name__)

__all__ = [
    "PRESERVED_FLAGS",
    "PreservationReport",
    "check_preservation",
    "TracePreservation",
    "experimental_trace_preservation",
]

# flag -> whether the images must have it too
PRESERVED_FLAGS = {
    "rooted": False,
    "connected": True,
    "adjacent_closed": True,
    "closed_bounded_unions": True,
    "closed_bounded_intersections": True,
}


@dataclass(frozen=True)
class PreservationReport:
    before: PropertyReport
    after: PropertyReport
    statuses: dict[str, PreservationStatus]

    @property
    def preserved(self) -> bool:
        return PreservationStatus.FAILS not in self.statuses.values()

    def as_json(self) -> dict[str, Any]:
        return {
            "preserved": self.preserved,
            "statuses": {flag: str(status) for flag, status in self.statuses.items()},
            "before": self.before.as_json(),
            "after": self.after.as_json(),
        }


def check_preservation(
    st: STStructure, r: RefinementFunction, *, budget: int | None = None
) -> PreservationReport:
    before = property_report(st)
    after = property_report(refine(st, r, budget=budget))
    images = [property_report(r[label]) for label in sorted(st.labels)]

    statuses: dict[str, PreservationStatus] = {}
    for flag, needs_images in PRESERVED_FLAGS.items():
        met = getattr(before, flag) and (
            not needs_images or all(getattr(image, flag) for image in images)
        )
        if not met:
            statuses[flag] = PreservationStatus.NOT_APPLICABLE
        elif getattr(after, flag):
            statuses[flag] = PreservationStatus.HOLDS
        else:
            logger.warning("Refinement lost %s", flag)
            statuses[flag] = PreservationStatus.FAILS
    return PreservationReport(before, after, statuses)


@dataclass(frozen=True)
class TracePreservation:
    traces_before: bool
    traces_after: bool
    cc_before: bool
    cc_after: bool

    def as_json(self) -> dict[str, bool]:
        return {
            "tracesBefore": self.traces_before,
            "tracesAfter": self.traces_after,
            "ccBefore": self.cc_before,
            "ccAfter": self.cc_after,
        }


def experimental_trace_preservation(
    a: STStructure, b: STStructure, r: RefinementFunction, *, budget: int | None = None
) -> TracePreservation:
    """
    Compare ST-trace equivalence and cc-equivalence of ``a`` and ``b`` before
    and after refining both. Reports only; neither is known to be preserved.
    """

    refined_a, refined_b = refine(a, r, budget=budget), refine(b, r, budget=budget)
    result = TracePreservation(
        traces_before=trace_set(a, budget=budget) == trace_set(b, budget=budget),
        traces_after=trace_set(refined_a, budget=budget) == trace_set(refined_b, budget=budget),
        cc_before=cc_equivalent_structures(a, b),
        cc_after=cc_equivalent_structures(refined_a, refined_b),
    )
    logger.info("Trace preservation experiment: %s", result.as_json())
    return result
