from django.db import models


class ChainOracle(models.TextChoices):
    """How two α-chains are compared."""

    LIST_RULE = "list", "Compare residual event lists"
    REWRITES = "rewrites", "Search single cubical-law swaps"
