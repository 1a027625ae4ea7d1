from django.apps import AppConfig


class HdaConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "src.hda"
    verbose_name = "Higher dimensional automata"
