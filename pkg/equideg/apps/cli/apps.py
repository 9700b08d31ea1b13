from django.apps import AppConfig


class CliConfig(AppConfig):
    name = 'equideg.apps.cli'
    verbose_name = 'Command-line jobs'
