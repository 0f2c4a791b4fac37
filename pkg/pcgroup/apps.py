from django.apps import AppConfig


class PcgroupConfig(AppConfig):
    name = "pcgroup"
    verbose_name = "Polycyclic presentations"
