"""
Django settings for the NilSat project.

The project uses Django as a command-line host: there are no URLs, views or
database tables, only management commands and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from decouple import config

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = config("SECRET_KEY", default="nilsat-local-only-not-a-secret")

DEBUG = config("DEBUG", default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition

DJANGO_APPS = []

# Custom apps
PROJECT_APPS = [
    "core.apps.CoreConfig",
    "numtheory.apps.NumtheoryConfig",
    "abelian_eq.apps.AbelianEqConfig",
    "pcgroup.apps.PcgroupConfig",
    "sat_tests.apps.SatTestsConfig",
    "harness.apps.HarnessConfig",
]

# Combine all apps
INSTALLED_APPS = DJANGO_APPS + PROJECT_APPS

# No persistence beyond output files
DATABASES = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# -----------------------------------
# Computation budgets and defaults

# Largest n the Mobius sieve may allocate (one int8 and one int64 per entry)
NILSAT_MOBIUS_MAX_N = config("NILSAT_MOBIUS_MAX_N", default=10**8, cast=int)

# Largest search volume for the brute-force oracles
NILSAT_BRUTE_FORCE_BUDGET = config(
    "NILSAT_BRUTE_FORCE_BUDGET", default=10**8, cast=int
)

# Accuracy of zeta values feeding the limit formulas
NILSAT_ZETA_EPS = config("NILSAT_ZETA_EPS", default=1e-12, cast=float)

# Monte Carlo batch length; part of the seed contract, changing it changes output
NILSAT_BATCH_SIZE = config("NILSAT_BATCH_SIZE", default=4096, cast=int)

NILSAT_THREADS = config("NILSAT_THREADS", default=1, cast=int)

# Multiplier on the selfcheck suite sizes
NILSAT_SELFCHECK_SCALE = config("NILSAT_SELFCHECK_SCALE", default=1.0, cast=float)


# LOGGING
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#logging
# Everything goes to stderr; stdout is reserved for CSV output.
LOG_LEVEL = config("LOG_LEVEL", default="WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(levelname)s %(asctime)s %(module)s "
            "%(process)d %(thread)d %(message)s"
        }
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        }
    },
    "loggers": {
        app: {"level": LOG_LEVEL, "handlers": ["console"], "propagate": False}
        for app in ("numtheory", "abelian_eq", "pcgroup", "sat_tests", "harness")
    },
    "root": {"level": "WARNING", "handlers": ["console"]},
}
