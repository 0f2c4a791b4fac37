from django.apps import AppConfig


class NumtheoryConfig(AppConfig):
    name = "numtheory"
