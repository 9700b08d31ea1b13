from django.apps import AppConfig


class BurnsideConfig(AppConfig):
    name = 'equideg.apps.burnside'
    verbose_name = 'Tracked Burnside ring of O(2)xZ2'
