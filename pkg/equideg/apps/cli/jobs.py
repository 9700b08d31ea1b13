"""
Job orchestration shared by the management commands.

Every job is validated as a JobSpec, dispatched to one of the four runners and
answered with a JobResult: the exit code and the report. Exit code 0 means at
least one certificate (or, for table and ring queries, a successful answer);
3 means a clean run that certified nothing.
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from rest_framework import serializers

from equideg.apps.bessel.serializers import BesselZeroSerializer
from equideg.apps.bessel.zeros import below_report, zero_record
from equideg.apps.bifurcation.invariants import global_report
from equideg.apps.bifurcation.serializers import BifurcationInputSerializer
from equideg.apps.burnside.ring import product_report
from equideg.apps.degree.certificates import BIFURCATION_HYPOTHESES, EXISTENCE_HYPOTHESES, existence_report
from equideg.apps.degree.serializers import ExistenceInputSerializer
from equideg.serializers import SCHEMA_VERSION, ReportSerializer

from .serializers import JobSpecSerializer

logger = logging.getLogger(__name__)

EXIT_CERTIFIED = 0
EXIT_NOTHING_CERTIFIED = 3


@dataclass(frozen=True)
class JobResult:
    exit_code: int
    report: dict


def load_input(value):
    """Read a job input given as a file path or as inline JSON text."""
    text = value
    if not value.lstrip().startswith(('{', '[')):
        path = Path(value)
        try:
            text = path.read_text(encoding='utf-8')
        except OSError as exc:
            raise serializers.ValidationError({'input': [f'Cannot read {value}: {exc.strerror}.']}) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise serializers.ValidationError({'input': [f'Invalid JSON: {exc}.']}) from None
    if not isinstance(data, dict):
        raise serializers.ValidationError({'input': ['Expected a JSON object.']})
    return data


def _payload(job):
    """Job input merged with the options given on the command line; command-line values win."""
    data = load_input(job['input'])
    data.update(job['options'])
    return data


def run_bessel(job):
    options = job['options']
    if 'below' in options:
        report = below_report(options['below'], options.get('m'))
    else:
        report = {'eigenvalues': [zero_record(options['m'], options['n'])]}
    report['eigenvalues'] = BesselZeroSerializer(report['eigenvalues'], many=True).data
    return JobResult(EXIT_CERTIFIED, {'schema': SCHEMA_VERSION, **report})


def run_burnside(job):
    options = job['options']
    report = product_report(options.get('modes', []), options.get('coeff'))
    return JobResult(EXIT_CERTIFIED, {'schema': SCHEMA_VERSION, **report})


def run_exist(job):
    request = ExistenceInputSerializer(data=_payload(job))
    request.is_valid(raise_exception=True)
    spectrum = request.save()
    report = existence_report(
        spectrum,
        guard=request.validated_data.get('guard'),
        assumptions=EXISTENCE_HYPOTHESES if request.validated_data['assert_hypotheses'] else (),
    )
    code = EXIT_CERTIFIED if report.certificates else EXIT_NOTHING_CERTIFIED
    return JobResult(code, ReportSerializer(report).data)


def run_bifurcate(job):
    request = BifurcationInputSerializer(data=_payload(job))
    request.is_valid(raise_exception=True)
    family = request.save()
    report = global_report(
        family,
        assumptions=BIFURCATION_HYPOTHESES if request.validated_data['assert_hypotheses'] else (),
        **request.analysis_options(),
    )
    code = EXIT_CERTIFIED if report.certificates else EXIT_NOTHING_CERTIFIED
    return JobResult(code, ReportSerializer(report).data)


RUNNERS = {
    'bessel': run_bessel,
    'burnside': run_burnside,
    'exist': run_exist,
    'bifurcate': run_bifurcate,
}


def run(spec):
    """Validate a JobSpec mapping and run it."""
    job = JobSpecSerializer(data=spec)
    job.is_valid(raise_exception=True)
    job = job.validated_data
    logger.debug("running %s job with options %s", job['command'], sorted(job['options']))
    return RUNNERS[job['command']](job)
