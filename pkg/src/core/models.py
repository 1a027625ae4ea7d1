from django.db import models


class StepKind(models.TextChoices):
    """Single steps of an ST-structure."""

    START = "s", "Start"
    TERMINATE = "t", "Terminate"


class ValidationMode(models.TextChoices):
    """How strictly the diagonal constraint on ST-structures is enforced."""

    STRICT = "strict", "Every (S,T) has (S,S)"
    WEAK = "weak", "Every (S,T) has some (S',S') with S included in S'"


class ClosureRule(models.IntegerChoices):
    """The four adjacent-closure rules, numbered as in the definition."""

    START_START = 1, "Two starts commute"
    START_TERMINATE_LATE = 2, "Terminate after a start can come first"
    START_TERMINATE_EARLY = 3, "Start and terminate from a shared source close a square"
    TERMINATE_TERMINATE = 4, "Two terminations commute"


class PropertyFlag(models.TextChoices):
    """Structural properties checked by reports and required as preconditions."""

    ROOTED = "rooted", "Rooted"
    CONNECTED = "connected", "Connected"
    CLOSED_BOUNDED_UNIONS = "closed_bounded_unions", "Closed under bounded unions"
    CLOSED_BOUNDED_INTERSECTIONS = (
        "closed_bounded_intersections",
        "Closed under bounded intersections",
    )
    STABLE = "stable", "Stable"
    ADJACENT_CLOSED = "adjacent_closed", "Adjacent-closed"
    CLOSED_SINGLE_EVENTS = "closed_single_events", "Closed under single events"
    ACYCLIC = "acyclic", "Acyclic"
    NON_DEGENERATE = "non_degenerate", "Non-degenerate"
