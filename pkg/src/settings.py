"""
Django settings for the truecc workbench.

The project has no web surface; Django supplies configuration, the
management-command CLI, and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

import environ

# Paths ---------------------------------------------------------------------
BASE_DIR = Path(__file__).resolve().parent.parent
FIXTURES_DIR = BASE_DIR / "fixtures"

# Environment ---------------------------------------------------------------
env = environ.Env()  # Set default values and casting
env_file = os.path.join(BASE_DIR, ".env")
if os.path.isfile(env_file):
    env.read_env(env_file)

# Core ----------------------------------------------------------------------
# No sessions or signing happen here, the key only satisfies Django's checks.
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="django-insecure-truecc-workbench-local-only",
)

DEBUG = env.bool("DEBUG", default=True)
ALLOWED_HOSTS = env.list("ALLOWED_HOSTS", default=["localhost", "127.0.0.1"])

# Applications --------------------------------------------------------------
INSTALLED_APPS = [
    # Project apps
    "src.core",
    "src.related",
    "src.hda",
    "src.sculpting",
    "src.equivalences",
    "src.refinement",
    "src.stc",
    "src.interchange",
]

# Database ------------------------------------------------------------------
# Every structure lives in memory; the test runner still expects an alias.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

# Internationalization ------------------------------------------------------
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

# Workbench -----------------------------------------------------------------
TRUECC_BUDGET = env.int("TRUECC_BUDGET", default=200_000)
TRUECC_VALIDATION_MODE = env("TRUECC_VALIDATION_MODE", default="strict")
TRUECC_CHU4_ORDER = env("TRUECC_CHU4_ORDER", default="monotone-cancel")
TRUECC_SCULPTURE_MAX_DIM = env.int("TRUECC_SCULPTURE_MAX_DIM", default=6)
TRUECC_LOG_LEVEL = env("TRUECC_LOG_LEVEL", default="WARNING")

# Logging -------------------------------------------------------------------
# Logs go to stderr so CLI documents on stdout stay clean.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "{levelname} {name}: {message}", "style": "{"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "src": {
            "handlers": ["console"],
            "level": TRUECC_LOG_LEVEL,
            "propagate": False,
        },
    },
}

# Defaults ------------------------------------------------------------------
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
