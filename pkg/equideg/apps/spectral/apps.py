from django.apps import AppConfig


class SpectralConfig(AppConfig):
    name = 'equideg.apps.spectral'
    verbose_name = 'Matrix spectra and one-parameter matrix families'
