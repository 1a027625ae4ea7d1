from django.db import models


class CancellationKind(models.TextChoices):
    """Steps of an STC-structure: plain s/t steps and the six cancellation kinds."""

    START = "s", "Start"
    TERMINATE = "t", "Terminate"
    CANCEL_ONE_START = "1cs", "Start and cancel one event"
    CANCEL_ONE_TERMINATE = "1ct", "Terminate and cancel one event"
    CANCEL_MANY_START = "ncs", "Start and cancel events"
    CANCEL_MANY_TERMINATE = "nct", "Terminate and cancel events"
    SWITCH_START = "pmcs", "Start and cancel or enable events"
    SWITCH_TERMINATE = "pmct", "Terminate and cancel or enable events"


class ChuOrder(models.TextChoices):
    """How the canceled value sits in the order on four values."""

    MONOTONE_CANCEL = "monotone-cancel", "0 < canceled"
    ENABLING = "enabling", "0 < canceled and canceled < 0"


class ChuValue(models.IntegerChoices):
    """Values of a Chu space state; the label is the printed symbol."""

    NOT_STARTED = 0, "0"
    RUNNING = 1, "⊙"
    TERMINATED = 2, "1"
    CANCELED = 3, "✕"
