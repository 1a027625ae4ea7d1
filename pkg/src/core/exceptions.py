"""
Domain errors shared by every workbench app.

All errors are ``ValidationError`` subclasses carrying a stable ``code`` and a
``params`` dict, so callers (the CLI in particular) can report them without
parsing messages.
"""

from __future__ import annotations

from typing import Any

from django.core.exceptions import ValidationError

__all__ = [
    "WorkbenchError",
    "StructureError",
    "ConstraintTnotSubsetS",
    "MissingClosure",
    "UndeclaredEvent",
    "ConfigNotInStructure",
    "TargetNotInStructure",
    "NotRooted",
    "CubicalLawViolation",
    "LabelMismatch",
    "PartialMap",
    "NoInitial",
    "CellNotFound",
    "CyclicInput",
    "PreconditionViolated",
    "NotStableInput",
    "BudgetExceeded",
    "DimensionCap",
    "SearchBudgetExceeded",
    "LengthMismatch",
    "LabelConflictInClass",
    "EmptyRefinementImage",
    "TnotSubsetS",
    "SCOverlap",
    "MissingDiagonalWithC",
    "ProjectionViolatesSTConstraint",
    "InvalidValuation",
    "DocumentError",
    "ParseError",
    "SchemaError",
    "UnreadableDocument",
]


class WorkbenchError(ValidationError):
    """Base class; subclasses fix ``default_code`` and a message template."""

    default_code = "workbench_error"
    template = "Workbench error."

    def __init__(self, message: str | None = None, **params: Any) -> None:
        super().__init__(message or self.template, code=self.default_code, params=params)

    def as_dict(self) -> dict[str, Any]:
        """JSON-friendly view used by the CLI."""

        return {
            "code": self.code,
            "message": self.message % self.params if self.params else self.message,
            "params": {key: _jsonable(value) for key, value in (self.params or {}).items()},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(item) for item in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if hasattr(value, "as_json"):
        return value.as_json()
    return value if isinstance(value, (str, int, float, bool, type(None))) else str(value)


# Structures ----------------------------------------------------------------
class StructureError(WorkbenchError):
    default_code = "structure_error"


class ConstraintTnotSubsetS(StructureError):
    default_code = "constraint_t_not_subset_s"
    template = "Configuration %(config)s terminates events it never started."


class MissingClosure(StructureError):
    default_code = "missing_closure"
    template = "Configuration %(config)s has no diagonal %(diagonal)s."


class UndeclaredEvent(StructureError):
    default_code = "undeclared_event"
    template = "Event %(event)s is not declared."


class ConfigNotInStructure(WorkbenchError):
    default_code = "config_not_in_structure"
    template = "Configuration %(config)s is not part of the structure."


class TargetNotInStructure(ConfigNotInStructure):
    default_code = "target_not_in_structure"
    template = "Target %(config)s is not part of the structure."


class NotRooted(WorkbenchError):
    default_code = "not_rooted"
    template = "Expected a rooted input: %(detail)s."


# HDAs ----------------------------------------------------------------------
class CubicalLawViolation(StructureError):
    default_code = "cubical_law_violation"
    template = "Cubical law %(alpha)s_%(i)s %(beta)s_%(j)s fails on cell %(cell)s."


class LabelMismatch(StructureError):
    default_code = "label_mismatch"
    template = "Opposite edges of square %(cell)s carry different labels."


class PartialMap(StructureError):
    default_code = "partial_map"
    template = "Map %(kind)s_%(i)s is undefined on cell %(cell)s."


class NoInitial(StructureError):
    default_code = "no_initial"
    template = "The HDA has no initial 0-cell."


class CellNotFound(WorkbenchError):
    default_code = "cell_not_found"
    template = "Cell %(cell)s does not exist."


class CyclicInput(WorkbenchError):
    default_code = "cyclic_input"
    template = "Operation requires an acyclic HDA; cycle through %(cycle)s."


# Preconditions and budgets -------------------------------------------------
class PreconditionViolated(WorkbenchError):
    default_code = "precondition_violated"
    template = "Input is not %(flag)s."


class NotStableInput(PreconditionViolated):
    default_code = "not_stable_input"
    template = "Configuration structure is not stable (%(flag)s)."


class BudgetExceeded(WorkbenchError):
    default_code = "budget_exceeded"
    template = "Search budget of %(budget)s exhausted."


class DimensionCap(BudgetExceeded):
    default_code = "dimension_cap"
    template = "Dimension %(dim)s exceeds the cap %(cap)s."


class SearchBudgetExceeded(BudgetExceeded):
    default_code = "search_budget_exceeded"
    template = "Search budget of %(budget)s exhausted."


# Sculpting, refinement, STC ------------------------------------------------
class LengthMismatch(WorkbenchError):
    default_code = "length_mismatch"
    template = "Chains of length %(left)s and %(right)s cannot be compared."


class LabelConflictInClass(WorkbenchError):
    default_code = "label_conflict_in_class"
    template = "Events %(events)s share a class but carry labels %(labels)s."


class EmptyRefinementImage(WorkbenchError):
    default_code = "empty_refinement_image"
    template = "Label %(label)s refines to a structure without configurations."


class TnotSubsetS(StructureError):
    default_code = "t_not_subset_s"
    template = "Configuration %(config)s terminates events it never started."


class SCOverlap(StructureError):
    default_code = "sc_overlap"
    template = "Configuration %(config)s starts canceled events."


class MissingDiagonalWithC(StructureError):
    default_code = "missing_diagonal_with_c"
    template = "Configuration %(config)s has no (S,S,C') with C included in C'."


class ProjectionViolatesSTConstraint(StructureError):
    default_code = "projection_violates_st_constraint"
    template = "Dropping cancellation leaves %(config)s without its diagonal."


class InvalidValuation(StructureError):
    default_code = "invalid_valuation"
    template = "Value %(value)s is not valid for event %(event)s over K=%(k)s."


# Documents -----------------------------------------------------------------
class DocumentError(WorkbenchError):
    default_code = "document_error"


class ParseError(DocumentError):
    default_code = "parse_error"
    template = "Malformed JSON at line %(line)s column %(column)s: %(detail)s."


class SchemaError(DocumentError):
    default_code = "schema_error"
    template = "Document does not match the %(kind)s schema: %(detail)s."


class UnreadableDocument(DocumentError):
    default_code = "unreadable_document"
    template = "Cannot read %(path)s: %(detail)s."
