from django.apps import AppConfig


class BifurcationConfig(AppConfig):
    name = 'equideg.apps.bifurcation'
    verbose_name = 'Critical points and bifurcation invariants'
