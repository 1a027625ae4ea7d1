from django.apps import AppConfig


class RelatedConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "src.related"
    verbose_name = "Configuration and event structures"
