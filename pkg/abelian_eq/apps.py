from django.apps import AppConfig


class AbelianEqConfig(AppConfig):
    name = "abelian_eq"
    verbose_name = "Equations over free abelian groups"
