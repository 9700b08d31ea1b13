from django.apps import AppConfig


class DegreeConfig(AppConfig):
    name = 'equideg.apps.degree'
    verbose_name = 'Degree coefficients and existence certificates'
