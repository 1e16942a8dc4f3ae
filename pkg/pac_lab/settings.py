"""
Django settings for the pac_lab project.

The lab has no web surface and no database: Django provides the settings
layer, the management-command CLI and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load .env if python-dotenv is installed
try:
    from dotenv import load_dotenv
    load_dotenv(BASE_DIR / ".env")
except ImportError:
    pass


def _env_bool(name, default):
    return os.environ.get(name, default).lower() in ("true", "1", "yes")


SECRET_KEY = os.environ.get("SECRET_KEY", "pac-lab-insecure-local-only-9k2v7q1x")

DEBUG = _env_bool("DEBUG", "False")

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "qstate",
    "concepts",
    "sampling",
    "learners",
    "analysis",
    "experiments",
]

# Flat files only; nothing is persisted through the ORM.
DATABASES = {}

TIME_ZONE = "UTC"

USE_TZ = True


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOG_LEVEL = os.environ.get("PAC_LAB_LOG_LEVEL", "INFO").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(asctime)s %(levelname)s %(name)s %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in ("pac_lab", "qstate", "concepts", "sampling", "learners", "analysis", "experiments")
    },
}


# Lab tunables. Library code reads them through pac_lab.conf.lab_setting().
PAC_LAB = {
    "MATRIX_ATOL": float(os.environ.get("PAC_LAB_MATRIX_ATOL", "1e-10")),
    "DISTINGUISHABILITY_ATOL": float(os.environ.get("PAC_LAB_DISTINGUISHABILITY_ATOL", "1e-8")),
    "PROBABILITY_ATOL": float(os.environ.get("PAC_LAB_PROBABILITY_ATOL", "1e-12")),
    "MAX_SHATTER_SUBSET": int(os.environ.get("PAC_LAB_MAX_SHATTER_SUBSET", "25")),
    "MAX_CLASS_SIZE": int(os.environ.get("PAC_LAB_MAX_CLASS_SIZE", "1000000")),
    "MAX_VC_SUBSETS": int(os.environ.get("PAC_LAB_MAX_VC_SUBSETS", "5000000")),
    "MAX_EXACT_RADEMACHER_POINTS": int(os.environ.get("PAC_LAB_MAX_EXACT_RADEMACHER_POINTS", "20")),
    "MAX_MUTUAL_INFO_D": int(os.environ.get("PAC_LAB_MAX_MUTUAL_INFO_D", "8")),
    "DEFAULT_SEED": int(os.environ.get("PAC_LAB_SEED", "20240601")),
    "N_JOBS": int(os.environ.get("PAC_LAB_N_JOBS", "1")),
    "RECORD_TIMING": _env_bool("PAC_LAB_RECORD_TIMING", "True"),
    "SLOW_TESTS": _env_bool("PAC_LAB_SLOW_TESTS", "False"),
}
