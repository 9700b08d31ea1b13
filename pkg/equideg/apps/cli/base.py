import argparse
import logging

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from equideg.exceptions import EquidegError

from . import jobs
from .rendering import render, render_json


def comma_floats(value):
    try:
        parts = [float(part) for part in value.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers separated by commas, got '{value}'") from None
    return parts


def comma_ints(value):
    if not value.strip():
        return []
    try:
        return [int(part) for part in value.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers separated by commas, got '{value}'") from None


class JobCommand(BaseCommand):
    """
    Base class of the equideg commands.

    Subclasses declare their arguments and ``job_options``; the job itself is
    validated and run by :func:`equideg.apps.cli.jobs.run`. The process exits
    with the job's code: 0 when something was certified, 3 when nothing was,
    and the error's own code otherwise.
    """
    job = None
    takes_input = False
    requires_system_checks = []

    def add_arguments(self, parser):
        if self.takes_input:
            parser.add_argument('--input', required=True, help='Path to a JSON job file, or the JSON text itself')
        parser.add_argument('--format', choices=['json', 'table'], default='json', dest='output_format')

    def job_options(self, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        if options['verbosity'] >= 2:
            logging.getLogger('equideg').setLevel(logging.DEBUG)
        spec = {
            'command': self.job,
            'format': options['output_format'],
            'options': {key: value for key, value in self.job_options(options).items() if value is not None},
        }
        if self.takes_input:
            spec['input'] = options['input']
        try:
            result = jobs.run(spec)
        except serializers.ValidationError as exc:
            raise CommandError(f"invalid job: {render_json(exc.detail)}", returncode=2) from None
        except EquidegError as exc:
            raise CommandError(render_json(exc.as_dict()), returncode=exc.exit_code) from None
        self.stdout.write(render(self.job, result.report, options['output_format']), ending='')
        if result.exit_code:
            raise CommandError('no certificates found', returncode=result.exit_code)
