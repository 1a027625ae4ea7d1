from django.db import models


class DocumentKind(models.TextChoices):
    """What a JSON document holds; dispatch happens on this field alone."""

    ST = "st", "ST-structure"
    STC = "stc", "STC-structure"
    CONFIG = "config", "Configuration structure"
    EVENT = "event", "Inpure event structure"
    HDA = "hda", "Higher dimensional automaton"
    SCULPTURE = "sculpture", "Sculpture"
    CHU = "chu", "Chu space"


class CompareMode(models.TextChoices):
    ISO = "iso", "Isomorphism"
    H = "h", "History-preserving bisimulation"
    HH = "hh", "Hereditary history-preserving bisimulation"
    CC = "cc", "Concurrency and causality"
