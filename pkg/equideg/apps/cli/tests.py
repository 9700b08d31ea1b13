import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from . import jobs
from .rendering import render
from .serializers import JobSpecSerializer

S01 = 5.783185962946785
S11 = 14.681970642123893

IDENTITY = {
    'family': {'kind': 'affine', 'a0': {'n': 1, 'rows': [[0]]}, 'a1': {'n': 1, 'rows': [[1]]}},
    'range': [0, 20],
}


def run_command(name, *args, **options):
    """Run a command; return its exit code, stdout and error message."""
    out = StringIO()
    try:
        call_command(name, *args, stdout=out, **options)
    except CommandError as exc:
        return exc.returncode, out.getvalue(), str(exc)
    return 0, out.getvalue(), ''


class JobSpecTests(SimpleTestCase):
    def test_unknown_command_and_fields(self):
        self.assertFalse(JobSpecSerializer(data={'command': 'solve'}).is_valid())
        self.assertFalse(JobSpecSerializer(data={'command': 'burnside', 'colour': 'red'}).is_valid())
        self.assertFalse(JobSpecSerializer(data={'command': 'burnside', 'options': {'depth': 1}}).is_valid())

    def test_options_are_checked_per_command(self):
        spec = JobSpecSerializer(data={'command': 'burnside', 'options': {'grid_step': 0.1}})
        self.assertFalse(spec.is_valid())
        self.assertIn('options', spec.errors)
        self.assertFalse(JobSpecSerializer(data={'command': 'bessel', 'options': {'m': 1}}).is_valid())
        self.assertFalse(JobSpecSerializer(data={'command': 'bessel', 'options': {'below': 9, 'n': 1}}).is_valid())
        self.assertFalse(JobSpecSerializer(data={'command': 'exist', 'options': {'tol': 0}, 'input': '{}'}).is_valid())

    def test_input_is_required_for_certificates(self):
        self.assertFalse(JobSpecSerializer(data={'command': 'exist'}).is_valid())
        spec = JobSpecSerializer(data={'command': 'exist', 'input': '{"spectrum": []}'})
        self.assertTrue(spec.is_valid(), spec.errors)
        self.assertEqual(spec.validated_data['format'], 'json')
        self.assertEqual(spec.validated_data['options'], {})


class JobTests(SimpleTestCase):
    def test_existence_exit_codes(self):
        result = jobs.run({'command': 'exist', 'input': '{"spectrum": [{"mu": 15, "mult": 1}]}'})
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.report['schema'], 1)
        self.assertEqual([(c['m0'], c['coeff']) for c in result.report['certificates']], [(1, -1)])
        result = jobs.run({'command': 'exist', 'input': '{"spectrum": [{"mu": 6, "mult": 1}]}'})
        self.assertEqual(result.exit_code, 3)
        self.assertEqual(result.report['certificates'], [])

    def test_command_line_options_override_input(self):
        spec = {
            'command': 'exist',
            'input': '{"spectrum": [{"mu": 15, "mult": 1}], "assert_hypotheses": false}',
            'options': {'assert_hypotheses': True},
        }
        self.assertEqual(jobs.run(spec).report['assumptions_asserted'], ['A1', 'A2', 'A3', 'A4'])

    def test_input_from_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'job.json'
            path.write_text(json.dumps(IDENTITY), encoding='utf-8')
            result = jobs.run({'command': 'bifurcate', 'input': str(path)})
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.report['global']['J_Lambda'], [1])

    def test_unreadable_input(self):
        from rest_framework.exceptions import ValidationError

        with self.assertRaises(ValidationError):
            jobs.load_input('/nonexistent/job.json')
        with self.assertRaises(ValidationError):
            jobs.load_input('{"spectrum": ')
        with self.assertRaises(ValidationError):
            jobs.load_input('[1, 2]')

    def test_rendering_is_deterministic(self):
        spec = {'command': 'bifurcate', 'input': json.dumps(IDENTITY)}
        first = render('bifurcate', jobs.run(spec).report)
        second = render('bifurcate', jobs.run(spec).report)
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first)['schema'], 1)


class BesselCommandTests(SimpleTestCase):
    def test_single_zero(self):
        code, out, _ = run_command('bessel', m=0, n=1)
        self.assertEqual(code, 0)
        record = json.loads(out)['eigenvalues'][0]
        self.assertAlmostEqual(record['zero'], 2.404825557695773, places=12)
        self.assertAlmostEqual(record['eigenvalue'], S01, places=10)

    def test_below(self):
        code, out, _ = run_command('bessel', below=15.0)
        report = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(report['max_mode'], 1)
        self.assertEqual([(r['m'], r['n']) for r in report['eigenvalues']], [(0, 1), (1, 1)])

    def test_table_format(self):
        code, out, _ = run_command('bessel', below=31.0, m=0, output_format='table')
        self.assertEqual(code, 0)
        self.assertIn('max_mode: 2', out)
        self.assertEqual(len(out.strip().splitlines()), 5)

    def test_missing_index(self):
        code, _, message = run_command('bessel', m=2)
        self.assertEqual(code, 2)
        self.assertIn('invalid job', message)


class BurnsideCommandTests(SimpleTestCase):
    def test_product_with_coefficient(self):
        code, out, _ = run_command('burnside', modes=[1, 2, 3], coeff=1)
        report = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(report['coeff'], {'m0': 1, 'value': 1, 'closed_form': 1, 'agree': True})

    def test_modes_from_the_command_line(self):
        code, out, _ = run_command('burnside', '--modes', '4,4')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['element'], {'unit': 1, 'radial': 0, 'dihedral': {}, 'untracked': False})
        code, out, _ = run_command('burnside')
        self.assertEqual(json.loads(out)['element']['unit'], 1)

    def test_capacity(self):
        code, out, message = run_command('burnside', modes=list(range(1, 24)))
        self.assertEqual(code, 6)
        self.assertEqual(out, '')
        self.assertEqual(json.loads(message)['error'], 'capacity')

    def test_table_format(self):
        code, out, _ = run_command('burnside', modes=[1, 2], coeff=1, output_format='table')
        self.assertEqual(code, 0)
        self.assertIn('agree True', out)


class ExistCommandTests(SimpleTestCase):
    def test_certificate(self):
        code, out, _ = run_command('exist', input='{"spectrum": [{"mu": 15, "mult": 1}]}')
        report = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(report['S'], [1])
        self.assertEqual(report['certificates'][0]['orbit_type'], 'D_{2m}^{D_m}x^{Z1}Z2')

    def test_nothing_certified(self):
        code, out, message = run_command('exist', input='{"spectrum": [{"mu": 6, "mult": 1}]}')
        self.assertEqual(code, 3)
        self.assertEqual(json.loads(out)['radial_indicator'], 'odd')
        self.assertEqual(message, 'no certificates found')

    def test_degenerate_matrix(self):
        job = json.dumps({'matrix': {'n': 1, 'rows': [[S01]]}})
        code, out, message = run_command('exist', input=job)
        self.assertEqual(code, 4)
        self.assertEqual(out, '')
        error = json.loads(message)
        self.assertEqual(error['error'], 'degenerate')
        self.assertEqual(error['violations'][0]['m'], 0)

    def test_schema_errors(self):
        code, _, _ = run_command('exist', input='{"spectrum": [], "schema": 2}')
        self.assertEqual(code, 2)
        code, _, _ = run_command('exist', input='{"spectrum": [], "colour": "red"}')
        self.assertEqual(code, 2)

    def test_table_format(self):
        code, out, _ = run_command(
            'exist', input='{"spectrum": [{"mu": 15, "mult": 1}]}', output_format='table', assert_hypotheses=True,
        )
        self.assertEqual(code, 0)
        self.assertIn('existence', out)
        self.assertIn('assumptions asserted: [A1, A2, A3, A4]', out)


class BifurcateCommandTests(SimpleTestCase):
    def test_identity_family(self):
        code, out, _ = run_command('bifurcate', input=json.dumps(IDENTITY))
        report = json.loads(out)
        self.assertEqual(code, 0)
        alphas = [cp['alpha'] for cp in report['critical_points']]
        self.assertAlmostEqual(alphas[0], S01, delta=1e-8)
        self.assertAlmostEqual(alphas[1], S11, delta=1e-8)
        self.assertEqual([(c['m0'], c['coeff']) for c in report['local'][1]['certificates']], [(1, 1)])
        self.assertEqual([c['m0'] for c in report['unbounded_nonradial']], [1])

    def test_range_from_the_command_line(self):
        family = {'family': IDENTITY['family']}
        code, out, _ = run_command('bifurcate', '--range', '0,10', input=json.dumps(family))
        self.assertEqual(code, 3)
        self.assertEqual(len(json.loads(out)['critical_points']), 1)

    def test_constant_family(self):
        job = {'family': {'kind': 'constant', 'matrix': {'n': 1, 'rows': [[6]]}}, 'range': [0, 1]}
        code, out, _ = run_command('bifurcate', input=json.dumps(job))
        self.assertEqual(code, 3)
        self.assertEqual(json.loads(out)['critical_points'], [])

    def test_continuum(self):
        job = {'family': {'kind': 'constant', 'matrix': {'n': 1, 'rows': [[S01]]}}, 'range': [0, 1]}
        code, _, message = run_command('bifurcate', input=json.dumps(job))
        self.assertEqual(code, 5)
        self.assertEqual(json.loads(message)['error'], 'non_isolated')

    def test_table_format(self):
        code, out, _ = run_command('bifurcate', input=json.dumps(IDENTITY), output_format='table', grid_step=0.5)
        self.assertEqual(code, 0)
        self.assertIn('unbounded_branch', out)
        self.assertIn('local_branch', out)
