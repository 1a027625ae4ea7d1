from django.apps import AppConfig


class EquivalencesConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "src.equivalences"
    verbose_name = "Isomorphism and bisimulation"
