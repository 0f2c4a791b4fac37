from django.apps import AppConfig


class SatTestsConfig(AppConfig):
    name = "sat_tests"
