from django.apps import AppConfig


class BesselConfig(AppConfig):
    name = 'equideg.apps.bessel'
    verbose_name = 'Bessel zeros and the Dirichlet spectrum of the disc'
