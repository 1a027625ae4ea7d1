from django.db import models


class FaceMap(models.TextChoices):
    """Face maps of a cubical set; s-steps climb from an s-face, t-steps descend to a t-face."""

    SOURCE = "s", "Source"
    TARGET = "t", "Target"


class NonDegeneracyRule(models.TextChoices):
    MISSING_FACE = "missing_face", "Every face of every cell exists"
    EQUAL_FACES = "equal_faces", "Faces with different indexes differ"
    PARALLEL_TRANSITIONS = (
        "parallel_transitions",
        "No two same-labelled transitions share both end states",
    )
