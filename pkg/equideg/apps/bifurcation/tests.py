import random

from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework.test import APISimpleTestCase

from equideg.apps.bessel.zeros import BesselZeroTable
from equideg.apps.spectral.families import AffineFamily, ConstantFamily, CurvesFamily, SpectrumCurve, TableFamily
from equideg.exceptions import DegeneracyError, NonIsolatedCriticalityError

from .critical import find_critical_points
from .invariants import (
    FamilyAnalysis,
    global_report,
    kfixed_unbounded_certificates,
    krasnoselskii_certificates,
    local_invariant,
    parity_change_modes,
)
from .serializers import BifurcationInputSerializer

S01 = 5.783185962946785
S11 = 14.681970642123893


def identity_family(lo=0.0, hi=20.0):
    return AffineFamily([[0.0]], [[1.0]], (lo, hi))


def random_curves_family(rng):
    curves = []
    for _ in range(rng.randint(1, 4)):
        knots = sorted({0.0, 50.0, *(rng.uniform(0, 50) for _ in range(rng.randint(0, 4)))})
        curves.append(SpectrumCurve.piecewise_linear(
            [(a, rng.uniform(-5, 60)) for a in knots], rng.randint(1, 3),
        ))
    return CurvesFamily(curves, (0.0, 50.0))


class CriticalPointTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_identity_family(self):
        points = find_critical_points(identity_family(), table=self.table)
        self.assertEqual(len(points), 2)
        self.assertAlmostEqual(points[0].alpha, S01, delta=1e-8)
        self.assertAlmostEqual(points[1].alpha, S11, delta=1e-8)
        self.assertEqual([(c.m, c.n, c.direction) for c in points[0].crossings], [(0, 1, 'up')])
        self.assertEqual([(c.m, c.n, c.direction) for c in points[1].crossings], [(1, 1, 'up')])
        self.assertLess(points[0].bracket[0], points[0].alpha)
        self.assertLess(points[0].alpha, points[0].bracket[1])
        self.assertEqual(points[0].bracket[1], points[1].bracket[0])

    def test_no_crossing(self):
        self.assertEqual(find_critical_points(identity_family(0.0, 5.0), table=self.table), [])
        self.assertEqual(find_critical_points(ConstantFamily([[10.0]], (0, 3)), table=self.table), [])
        self.assertEqual(find_critical_points(AffineFamily([[-1.0]], [[-1.0]], (0, 9)), table=self.table), [])

    def test_simultaneous_crossings_merge(self):
        family = CurvesFamily(
            [SpectrumCurve(1, lambda a: a), SpectrumCurve(1, lambda a: a * S11 / S01)], (0.0, 10.0),
        )
        points = find_critical_points(family, table=self.table)
        # the steeper branch passes s01 first, then both branches cross at s01 / s11 together
        self.assertEqual(len(points), 2)
        self.assertAlmostEqual(points[0].alpha, S01 * S01 / S11, delta=1e-8)
        self.assertAlmostEqual(points[1].alpha, S01, delta=1e-8)
        self.assertEqual(sorted((c.m, c.n) for c in points[1].crossings), [(0, 1), (1, 1)])

    def test_continuum_criticality(self):
        with self.assertRaises(NonIsolatedCriticalityError):
            find_critical_points(ConstantFamily([[S01]], (0, 1)), table=self.table)
        flat = TableFamily([(0.0, [[0.0]]), (1.0, [[S01]]), (2.0, [[S01]]), (3.0, [[10.0]])])
        with self.assertRaises(NonIsolatedCriticalityError):
            find_critical_points(flat, table=self.table)

    def test_critical_point_on_the_boundary(self):
        with self.assertRaises(DegeneracyError):
            find_critical_points(identity_family(S01, 10.0), table=self.table)

    def test_custom_grid(self):
        points = find_critical_points(identity_family(), grid_step=0.5, tol=1e-12, table=self.table)
        self.assertAlmostEqual(points[1].alpha, S11, delta=1e-10)

    def test_multiplicity_jump_is_not_a_crossing(self):
        family = AffineFamily([[10.0, 0.0], [0.0, 10.0]], [[0.0, 1.0], [0.0, 0.0]], (-1.0, 1.0))
        self.assertEqual(family.spectrum_at(0.0)[0].geom_mult, 2)
        self.assertEqual(family.spectrum_at(0.5)[0].geom_mult, 1)
        self.assertEqual(find_critical_points(family, table=self.table), [])
        self.assertEqual(global_report(family, table=self.table).certificates, ())

    def test_moving_jordan_block(self):
        family = AffineFamily([[0.0, 1.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 1.0]], (0.0, 20.0))
        points = find_critical_points(family, table=self.table)
        self.assertEqual(len(points), 2)
        self.assertAlmostEqual(points[1].alpha, S11, delta=1e-8)
        self.assertEqual([c.mult for c in points[1].crossings], [2])
        report = global_report(family, table=self.table)
        self.assertEqual([(c.m0, c.coeff) for c in report.local_certificates], [(1, 1)])


class LocalInvariantTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()
        self.family = identity_family()
        self.points = find_critical_points(self.family, table=self.table)

    def test_radial_crossing(self):
        local = local_invariant(self.family, self.points[0], table=self.table)
        self.assertEqual(local.j_set, ())
        self.assertTrue(all(value == 0 for value in local.coeffs.values()))
        self.assertEqual(local.t_counts, {0: 1})
        self.assertEqual(krasnoselskii_certificates(self.family, self.points[0], local), [])

    def test_first_dihedral_crossing(self):
        local = local_invariant(self.family, self.points[1], table=self.table)
        self.assertEqual(local.coeffs[1], 1)
        self.assertEqual(local.j_set, (1,))
        self.assertEqual(local.closed_form[1], 1)
        self.assertTrue(local.closed_form_agrees)
        self.assertEqual(local.parity_change_modes, (1,))
        certificates = krasnoselskii_certificates(self.family, self.points[1], local)
        self.assertEqual([(c.m0, c.coeff) for c in certificates], [(1, 1)])

    def test_parity_change_modes_match_j(self):
        self.assertEqual(parity_change_modes(self.family, self.points[0], table=self.table), ())
        self.assertEqual(parity_change_modes(self.family, self.points[1], table=self.table), (1,))

    def test_odd_multiplicities_crossing_together_cancel(self):
        family = CurvesFamily(
            [SpectrumCurve(1, lambda a: a), SpectrumCurve(1, lambda a: S11 + 2 * (a - S11))], (12.0, 16.0),
        )
        point, = find_critical_points(family, table=self.table)
        local = local_invariant(family, point, table=self.table)
        self.assertEqual(local.t_counts, {0: 0, 1: 2})
        self.assertEqual(local.j_set, ())
        self.assertEqual(local.coeffs[1], 0)

    def test_even_multiplicity_gives_no_certificate(self):
        family = AffineFamily([[0.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 1.0]], (10.0, 20.0))
        point, = find_critical_points(family, table=self.table)
        self.assertEqual(krasnoselskii_certificates(family, point, table=self.table), [])

    def test_even_mode_crossing(self):
        family = identity_family(20.0, 28.0)
        point, = find_critical_points(family, table=self.table)
        local = local_invariant(family, point, table=self.table)
        self.assertEqual(local.j_set, (2,))
        self.assertEqual(local.coeffs[2], 1)
        self.assertEqual(kfixed_unbounded_certificates(family, table=self.table), [])


class GlobalReportTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_identity_family(self):
        report = global_report(identity_family(), table=self.table)
        self.assertEqual(report.sum_coeffs[1], 1)
        self.assertEqual(report.j_lambda, (1,))
        self.assertTrue(report.closed_form_agrees)
        self.assertEqual([(c.m0, c.unbounded, c.non_radial) for c in report.kfixed_certificates], [(1, True, True)])
        self.assertEqual([c.m0 for c in report.local_certificates], [1])
        self.assertEqual([t.as_dict() for t in report.sigma_k_end], [{'m': 1, 'n': 1, 'j': 1}])

    def test_empty_critical_set(self):
        report = global_report(identity_family(0.0, 5.0), table=self.table)
        self.assertEqual(report.critical_points, ())
        self.assertEqual(report.sum_coeffs, {})
        self.assertEqual(report.certificates, ())

    def test_mirrored_family(self):
        report = global_report(AffineFamily([[20.0]], [[-1.0]], (0.0, 20.0)), table=self.table)
        self.assertEqual(report.sum_coeffs[1], -1)

    def test_reversal_negates_every_coefficient(self):
        family = identity_family(0.0, 40.0)
        forward = global_report(family, table=self.table)
        backward = global_report(family.reversed(), table=self.table)
        self.assertEqual(len(forward.local), len(backward.local))
        for a, b in zip(forward.local, reversed(backward.local)):
            self.assertAlmostEqual(a.at.alpha, 40.0 - b.at.alpha, delta=1e-8)
            self.assertEqual({m: -c for m, c in a.coeffs.items()}, b.coeffs)
        self.assertEqual({m: -c for m, c in forward.sum_coeffs.items()}, backward.sum_coeffs)

    def test_second_eigenvalue_keeps_parity(self):
        family = CurvesFamily(
            [SpectrumCurve(1, lambda a: a), SpectrumCurve(1, lambda a: 10.0 + a / 2)], (0.0, 31.0),
        )
        report = global_report(family, table=self.table)
        self.assertNotIn(1, report.j_lambda)
        self.assertNotIn(1, [c.m0 for c in report.kfixed_certificates])

    def test_assumptions_are_recorded(self):
        report = global_report(identity_family(), assumptions=('A1', 'B~'), table=self.table).as_dict()
        self.assertEqual(report['assumptions_asserted'], ['A1', 'B~'])
        self.assertEqual(report['global']['J_Lambda'], [1])
        self.assertEqual(report['unbounded_nonradial'][0]['m0'], 1)
        self.assertEqual(len(report['critical_points']), 2)

    def test_splitting_at_a_regular_point(self):
        family = identity_family(0.0, 40.0)
        full = global_report(family, table=self.table)
        cut = 20.0
        left = global_report(family.restricted(0.0, cut), table=self.table)
        right = global_report(family.restricted(cut, 40.0), table=self.table)
        for m0, value in full.sum_coeffs.items():
            self.assertEqual(left.sum_coeffs.get(m0, 0) + right.sum_coeffs.get(m0, 0), value)

    def test_random_curve_families_telescope(self):
        rng = random.Random(31)
        for _ in range(100):
            family = random_curves_family(rng)
            analysis = FamilyAnalysis(family, table=self.table)
            report = global_report(analysis)
            if not report.critical_points:
                continue
            start = analysis.profile(report.critical_points[0].bracket[0])
            for m0, value in report.sum_coeffs.items():
                self.assertEqual(sum(inv.coeffs.get(m0, 0) for inv in report.local), value)
            self.assertEqual(start, analysis.profile(report.critical_points[0].bracket[0]))
            self.assertIsInstance(report.closed_form_agrees, bool)

            # split at a bracket point between two critical points
            if len(report.critical_points) > 1:
                cut = report.critical_points[0].bracket[1]
                left = global_report(family.restricted(0.0, cut), table=self.table)
                right = global_report(family.restricted(cut, 50.0), table=self.table)
                for m0, value in report.sum_coeffs.items():
                    self.assertEqual(left.sum_coeffs.get(m0, 0) + right.sum_coeffs.get(m0, 0), value)

    def test_small_shift_changes_no_invariant(self):
        def shifted(eps):
            rising = SpectrumCurve.piecewise_linear([(0.0, 2.0 + eps), (50.0, 40.0 + eps)])
            dipping = SpectrumCurve.piecewise_linear([(0.0, 38.0 + eps), (25.0, 12.0 + eps), (50.0, 20.0 + eps)])
            return CurvesFamily([rising, dipping], (0.0, 50.0))

        def summary(report):
            return {
                'points': len(report.critical_points),
                'crossings': [[(c.m, c.n, c.direction, c.mult) for c in cp.crossings] for cp in report.critical_points],
                'J': [inv.j_set for inv in report.local],
                'coeffs': [inv.coeffs for inv in report.local],
                'J_Lambda': report.j_lambda,
                'sum_coeffs': report.sum_coeffs,
                'certificates': [(c.kind, c.m0, c.coeff) for c in report.certificates],
            }

        base = global_report(shifted(0.0), table=self.table)
        self.assertEqual(len(base.critical_points), 8)
        for eps in (1e-7, -1e-7, 1e-5):
            moved = global_report(shifted(eps), table=self.table)
            self.assertEqual(summary(moved), summary(base))
            for a, b in zip(base.critical_points, moved.critical_points):
                self.assertAlmostEqual(a.alpha, b.alpha, delta=1e-4)


class BifurcationInputTests(SimpleTestCase):
    def test_range_supplies_domain(self):
        job = BifurcationInputSerializer(data={
            'family': {'kind': 'affine', 'a0': {'n': 1, 'rows': [[0]]}, 'a1': {'n': 1, 'rows': [[1]]}},
            'range': [0, 20],
        })
        self.assertTrue(job.is_valid(), job.errors)
        self.assertEqual(job.save().domain, (0.0, 20.0))

    def test_range_restricts_table(self):
        job = BifurcationInputSerializer(data={
            'family': {'kind': 'table', 'samples': [
                {'alpha': 0, 'matrix': {'n': 1, 'rows': [[0]]}},
                {'alpha': 10, 'matrix': {'n': 1, 'rows': [[10]]}},
            ]},
            'range': [2, 8],
            'grid_step': 0.1,
        })
        self.assertTrue(job.is_valid(), job.errors)
        self.assertEqual(job.save().domain, (2.0, 8.0))
        self.assertEqual(job.analysis_options(), {'grid_step': 0.1})

    def test_rejects_bad_input(self):
        self.assertFalse(BifurcationInputSerializer(data={'family': {'kind': 'constant'}}).is_valid())
        bad_step = {'family': {'kind': 'constant', 'matrix': {'n': 1, 'rows': [[1]]}}, 'grid_step': 0}
        self.assertFalse(BifurcationInputSerializer(data=bad_step).is_valid())


class BifurcationApiTests(APISimpleTestCase):
    def test_identity_family(self):
        body = {
            'family': {'kind': 'affine', 'a0': {'n': 1, 'rows': [[0]]}, 'a1': {'n': 1, 'rows': [[1]]}},
            'range': [0, 20],
            'assert_hypotheses': True,
        }
        response = self.client.post(reverse('bifurcation-list'), body, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['global']['sum_coeffs'], {'1': 1})
        self.assertIn('B~', response.data['assumptions_asserted'])

    def test_continuum(self):
        body = {'family': {'kind': 'constant', 'matrix': {'n': 1, 'rows': [[S01]]}}, 'range': [0, 1]}
        response = self.client.post(reverse('bifurcation-list'), body, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['error'], 'non_isolated')
