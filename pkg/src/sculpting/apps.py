from django.apps import AppConfig


class SculptingConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "src.sculpting"
    verbose_name = "Translations, bulks and sculptures"
