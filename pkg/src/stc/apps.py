from django.apps import AppConfig


class StcConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "src.stc"
    verbose_name = "STC-structures and Chu spaces"
