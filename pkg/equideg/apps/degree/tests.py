import random

import numpy as np
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework.test import APISimpleTestCase

from equideg.apps.bessel.zeros import BesselZeroTable
from equideg.apps.burnside.ring import BurnsideElement, OrbitType, basic_degree
from equideg.apps.spectral.spectrum import SpectrumEntry, real_spectrum
from equideg.exceptions import DegeneracyError

from .certificates import existence_certificates, existence_report
from .profile import (
    IndexTriple,
    ModeProfile,
    annulus_coeff,
    build_profile,
    degree_coeff,
    degree_element,
    mode_parity,
    theorem11_predicate,
)
from .serializers import ExistenceInputSerializer

S01 = 5.783185962946785


def spectrum(*pairs):
    return [SpectrumEntry(float(mu), mult) for mu, mult in pairs]


class ProfileTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_single_eigenvalue_above_first_radial_level(self):
        profile = build_profile(spectrum((6, 1)), self.table)
        self.assertEqual(profile.sigma0, (IndexTriple(0, 1, 1),))
        self.assertEqual(profile.n0, 1)
        self.assertEqual(profile.s_set, ())
        self.assertEqual(profile.radial_indicator, 'odd')

    def test_eigenvalue_dominating_first_zero_of_j1(self):
        profile = build_profile(spectrum((15, 1)), self.table)
        self.assertEqual(profile.sigma0, (IndexTriple(0, 1, 1), IndexTriple(1, 1, 1)))
        self.assertEqual(profile.n0, 1)
        self.assertEqual(profile.s_set, (1,))

    def test_even_multiplicity_is_not_counted(self):
        profile = build_profile(spectrum((15, 2)), self.table)
        self.assertEqual(profile.sigma0, (IndexTriple(0, 1, 1), IndexTriple(1, 1, 1)))
        self.assertEqual(profile.counts, {0: 0, 1: 0})
        self.assertEqual(profile.s_set, ())
        self.assertEqual(profile.n0, 0)

    def test_counts_over_several_eigenvalues(self):
        profile = build_profile(spectrum((31, 1), (15, 3), (-4, 1)), self.table)
        # 31 dominates s01, s02, s11, s21; 15 dominates s01, s11
        self.assertEqual(profile.counts, {0: 3, 1: 2, 2: 1})
        self.assertEqual(profile.s_set, (2,))
        self.assertEqual(profile.n0, 3)

    def test_degenerate_spectrum_is_refused(self):
        with self.assertRaises(DegeneracyError) as caught:
            build_profile(spectrum((S01, 1)), self.table)
        self.assertEqual([v.as_tuple() for v in caught.exception.violations], [(1, 0, 1)])
        self.assertEqual(caught.exception.exit_code, 4)

    def test_eigenvalues_below_first_level_give_empty_profile(self):
        rng = random.Random(2)
        for _ in range(20):
            values = spectrum(*[(rng.uniform(-50, S01 - 0.01), rng.randint(1, 3)) for _ in range(4)])
            profile = build_profile(values, self.table)
            self.assertEqual(profile.sigma0, ())
            self.assertEqual(profile.s_set, ())
            for m0 in range(1, 6):
                self.assertEqual(degree_coeff(profile, m0), 0)

    def test_larger_table_does_not_change_sigma0(self):
        big = BesselZeroTable().build(900.0)
        rng = random.Random(4)
        for _ in range(20):
            values = spectrum(*[(rng.uniform(0, 100), rng.randint(1, 3)) for _ in range(3)])
            self.assertEqual(build_profile(values, self.table).sigma0, build_profile(values, big).sigma0)


class DegreeCoefficientTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_examples(self):
        self.assertEqual(degree_coeff(build_profile(spectrum((15, 1)), self.table), 1), -1)
        six = build_profile(spectrum((6, 1)), self.table)
        for m0 in range(1, 8):
            self.assertEqual(degree_coeff(six, m0), 0)
        self.assertEqual(degree_coeff(ModeProfile((), {}, (1, 2, 3), 0), 1), 1)

    def test_annulus_coefficient_is_negated(self):
        profile = ModeProfile((), {}, (1, 2, 3), 0)
        for m0 in (1, 2, 3):
            self.assertEqual(annulus_coeff(profile, m0), -degree_coeff(profile, m0))

    def test_degree_element(self):
        profile = build_profile(spectrum((15, 1)), self.table)
        element = degree_element(profile)
        self.assertEqual(element.coeff(OrbitType.dihedral(1)), -1)
        self.assertTrue(element.has_untracked)
        element = degree_element(build_profile(spectrum((15, 2)), self.table))
        self.assertEqual(element, BurnsideElement.one())
        self.assertEqual(degree_element(ModeProfile((), {}, (3,), 0)), basic_degree(3))

    def test_members_of_s_have_odd_coefficients(self):
        rng = random.Random(9)
        for _ in range(40):
            values = spectrum(*[(rng.uniform(0, 150), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))])
            profile = build_profile(values, self.table)
            for m0 in profile.s_set:
                self.assertEqual(degree_coeff(profile, m0) % 2, 1)


class ModeParityPredicateTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_examples(self):
        self.assertTrue(theorem11_predicate(spectrum((15, 1)), self.table, 1))
        self.assertFalse(theorem11_predicate(spectrum((15, 1)), self.table, 2))
        self.assertFalse(theorem11_predicate(spectrum((15, 1), (16, 1)), self.table, 1))
        self.assertEqual(mode_parity(spectrum((15, 1), (16, 1)), self.table, 1), 2)

    def test_agrees_with_index_set(self):
        rng = random.Random(11)
        for _ in range(100):
            values = spectrum(*[(rng.uniform(0, 100), rng.randint(1, 4)) for _ in range(rng.randint(1, 6))])
            profile = build_profile(values, self.table)
            for m in range(1, 10):
                with self.subTest(values=values, m=m):
                    self.assertEqual(theorem11_predicate(values, self.table, m), m in profile.s_set)


class ExistenceTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_single_certificate(self):
        certificates = existence_certificates(spectrum((15, 1)), self.table)
        self.assertEqual([(c.m0, c.coeff) for c in certificates], [(1, -1)])
        self.assertEqual(certificates[0].annulus_coeff, 1)
        self.assertEqual(certificates[0].guarantee, 'non-trivial solution with (G_u) >= (H_1)')

    def test_no_certificates(self):
        self.assertEqual(existence_certificates(spectrum((6, 1)), self.table), [])
        self.assertEqual(existence_certificates(spectrum((15, 2)), self.table), [])
        self.assertEqual(existence_certificates([], self.table), [])

    def test_close_eigenvalues_of_a_matrix_certify_nothing(self):
        values = real_spectrum(np.diag([15.0, 15.00001]))
        self.assertEqual(existence_certificates(values, self.table), [])
        self.assertEqual(existence_certificates(spectrum((15, 1), (15.00001, 1)), self.table), [])
        self.assertEqual(existence_report(values, self.table).profile.s_set, ())

    def test_reports(self):
        report = existence_report(spectrum((6, 1)), self.table)
        self.assertEqual(report.radial_indicator, 'odd')
        self.assertEqual(report.certificates, ())
        empty = existence_report([], self.table).as_dict()
        self.assertEqual(empty['radial_indicator'], 'even')
        self.assertEqual(empty['sigma0'], [])
        self.assertEqual(empty['degree'], {'unit': 1, 'radial': 0, 'dihedral': {}, 'untracked': False})

    def test_report_rendering(self):
        report = existence_report(spectrum((15, 1)), self.table, assumptions=('A1', 'A2', 'A3', 'A4')).as_dict()
        self.assertEqual(report['S'], [1])
        self.assertEqual(report['counts'], {'0': 1, '1': 1})
        self.assertEqual(report['sigma0'], [{'m': 0, 'n': 1, 'j': 1}, {'m': 1, 'n': 1, 'j': 1}])
        self.assertEqual(report['assumptions_asserted'], ['A1', 'A2', 'A3', 'A4'])
        certificate = report['certificates'][0]
        self.assertEqual(certificate['orbit_type'], 'D_{2m}^{D_m}x^{Z1}Z2')
        self.assertEqual(certificate['coeff'], -1)
        self.assertIn('D', certificate['conditional_on'])

    def test_certificates_for_every_mode_in_s(self):
        rng = random.Random(13)
        for _ in range(30):
            values = spectrum(*[(rng.uniform(0, 120), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))])
            report = existence_report(values, self.table)
            certified = {c.m0 for c in report.certificates}
            self.assertTrue(set(report.profile.s_set) <= certified)


class ExistenceInputTests(SimpleTestCase):
    def test_exactly_one_source(self):
        self.assertFalse(ExistenceInputSerializer(data={}).is_valid())
        both = {'spectrum': [{'mu': 1, 'mult': 1}], 'matrix': {'n': 1, 'rows': [[1]]}}
        self.assertFalse(ExistenceInputSerializer(data=both).is_valid())

    def test_matrix_source(self):
        job = ExistenceInputSerializer(data={'matrix': {'n': 3, 'rows': [[15, 0, 0], [0, 15, 0], [0, 0, 2]]}})
        self.assertTrue(job.is_valid(), job.errors)
        values = job.save()
        self.assertEqual([(round(e.mu, 9), e.geom_mult) for e in values], [(15.0, 2), (2.0, 1)])

    def test_schema_version(self):
        self.assertFalse(ExistenceInputSerializer(data={'schema': 2, 'spectrum': []}).is_valid())
        self.assertFalse(ExistenceInputSerializer(data={'spectrum': [], 'extra': 1}).is_valid())
        self.assertTrue(ExistenceInputSerializer(data={'schema': 1, 'spectrum': []}).is_valid())


class ExistenceApiTests(APISimpleTestCase):
    def test_certificate(self):
        response = self.client.post(reverse('existence-list'), {'spectrum': [{'mu': 15, 'mult': 1}]}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['schema'], 1)
        self.assertEqual([c['m0'] for c in response.data['certificates']], [1])

    def test_degenerate_matrix(self):
        response = self.client.post(
            reverse('existence-list'), {'matrix': {'n': 1, 'rows': [[S01]]}}, format='json',
        )
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['error'], 'degenerate')
        self.assertEqual(response.data['violations'][0]['m'], 0)
