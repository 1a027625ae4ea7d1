from django.apps import AppConfig


class InterchangeConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "src.interchange"
    verbose_name = "Documents and the truecc command"
