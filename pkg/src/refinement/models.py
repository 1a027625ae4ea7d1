from django.db import models


class PreservationStatus(models.TextChoices):
    """Outcome of one preservation implication on a concrete refinement."""

    HOLDS = "holds", "Hypotheses met and property preserved"
    FAILS = "fails", "Hypotheses met but property lost"
    NOT_APPLICABLE = "not_applicable", "Hypotheses unmet"
