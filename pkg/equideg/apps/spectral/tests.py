import random

import numpy as np
from django.test import SimpleTestCase

from equideg.apps.bessel.zeros import BesselZeroTable
from equideg.exceptions import DomainError

from .families import AffineFamily, ConstantFamily, CurvesFamily, SpectrumCurve, TableFamily, spectrum_at
from .serializers import FamilySerializer, MatrixSerializer
from .spectrum import SpectrumEntry, check_nondegeneracy, real_spectrum

S01 = 5.783185962946785


def pairs(spectrum):
    return [(round(entry.mu, 9), entry.geom_mult) for entry in spectrum]


class RealSpectrumTests(SimpleTestCase):
    def test_diagonal(self):
        self.assertEqual(pairs(real_spectrum([[6.0]])), [(6.0, 1)])
        self.assertEqual(pairs(real_spectrum(np.diag([15.0, 15.0, 2.0]))), [(15.0, 2), (2.0, 1)])

    def test_jordan_block_has_geometric_multiplicity_one(self):
        self.assertEqual(pairs(real_spectrum([[5.0, 1.0], [0.0, 5.0]])), [(5.0, 1)])

    def test_close_distinct_eigenvalues_stay_apart(self):
        self.assertEqual(pairs(real_spectrum(np.diag([15.0, 15.00001]))), [(15.00001, 1), (15.0, 1)])
        self.assertEqual(
            pairs(real_spectrum(np.diag([1000.0, 15.0, 15.003]))),
            [(1000.0, 1), (15.003, 1), (15.0, 1)],
        )
        q, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(3, 3)))
        rotated = real_spectrum(q @ np.diag([15.0, 15.00001, 2.0]) @ q.T)
        self.assertEqual([entry.geom_mult for entry in rotated], [1, 1, 1])
        self.assertAlmostEqual(rotated[0].mu - rotated[1].mu, 1e-5, delta=1e-9)

    def test_similar_jordan_block_stays_one_eigenvalue(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            basis = rng.normal(size=(3, 3))
            jordan = np.array([[5.0, 1.0, 0.0], [0.0, 5.0, 0.0], [0.0, 0.0, 9.0]])
            spectrum = real_spectrum(basis @ jordan @ np.linalg.inv(basis))
            self.assertEqual([entry.geom_mult for entry in spectrum], [1, 1])
            self.assertAlmostEqual(spectrum[1].mu, 5.0, delta=1e-6)

    def test_complex_pairs_are_counted_not_returned(self):
        rotation = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 3.0]]
        with self.assertLogs('equideg.apps.spectral.spectrum', level='WARNING'):
            spectrum = real_spectrum(rotation)
        self.assertEqual(pairs(spectrum), [(3.0, 1)])
        self.assertEqual(spectrum.complex_pairs, 1)

    def test_multiplicities_never_exceed_size(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            size = int(rng.integers(1, 7))
            spectrum = real_spectrum(rng.normal(size=(size, size)))
            self.assertLessEqual(sum(entry.geom_mult for entry in spectrum), size)

    def test_similarity_invariance_on_symmetric_matrices(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            base = np.diag(rng.choice([1.0, 4.0, 9.5, -2.0], size=5))
            q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
            left = real_spectrum(base)
            right = real_spectrum(q @ base @ q.T)
            self.assertEqual([e.geom_mult for e in left], [e.geom_mult for e in right])
            for a, b in zip(left, right):
                self.assertAlmostEqual(a.mu, b.mu, delta=1e-9)

    def test_rejects_bad_matrices(self):
        with self.assertRaises(DomainError):
            real_spectrum([[1.0, 2.0]])
        with self.assertRaises(DomainError):
            real_spectrum([[float('inf')]])
        with self.assertRaises(DomainError):
            real_spectrum([])


class NondegeneracyTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_regular_spectrum(self):
        self.assertEqual(check_nondegeneracy([SpectrumEntry(6.0, 1)], self.table, 1e-6), [])
        self.assertEqual(check_nondegeneracy([SpectrumEntry(-3.0, 1)], self.table, 1e-6), [])
        self.assertEqual(check_nondegeneracy([], self.table, 1e-6), [])

    def test_violation_reports_index_triple(self):
        violations = check_nondegeneracy([SpectrumEntry(S01, 1)], self.table, 1e-6)
        self.assertEqual([v.as_tuple() for v in violations], [(1, 0, 1)])

    def test_violation_on_later_eigenvalue(self):
        s11 = self.table.laplacian_eigenvalue(1, 1)
        violations = check_nondegeneracy([(40.0, 1), (s11 + 1e-8, 2)], self.table, 1e-6)
        self.assertEqual([v.as_tuple() for v in violations], [(2, 1, 1)])

    def test_monotone_in_guard(self):
        rng = random.Random(3)
        for _ in range(50):
            spectrum = [SpectrumEntry(rng.uniform(0, 80), 1) for _ in range(3)]
            for guard in (1e-1, 1e-2, 1e-3):
                if not check_nondegeneracy(spectrum, self.table, guard):
                    for smaller in (guard / 10, guard / 1000):
                        self.assertEqual(check_nondegeneracy(spectrum, self.table, smaller), [])


class FamilyTests(SimpleTestCase):
    def test_affine_family(self):
        family = AffineFamily([[0.0]], [[1.0]], (0.0, 20.0))
        self.assertEqual(pairs(spectrum_at(family, 7.0)), [(7.0, 1)])

    def test_curve_family(self):
        family = CurvesFamily([SpectrumCurve(1, lambda a: a * a)], (0.0, 5.0))
        self.assertEqual(pairs(spectrum_at(family, 3.0)), [(9.0, 1)])

    def test_curves_meeting_are_merged(self):
        family = CurvesFamily(
            [SpectrumCurve.piecewise_linear([(0, 0), (2, 4)]), SpectrumCurve.piecewise_linear([(0, 4), (2, 0)], 2)],
            (0.0, 2.0),
        )
        self.assertEqual(pairs(spectrum_at(family, 1.0)), [(2.0, 3)])

    def test_table_family_interpolates(self):
        family = TableFamily([(0.0, [[1.0]]), (2.0, [[5.0]])])
        self.assertEqual(family.domain, (0.0, 2.0))
        self.assertEqual(pairs(spectrum_at(family, 1.0)), [(3.0, 1)])

    def test_table_family_requires_increasing_alpha(self):
        with self.assertRaises(DomainError):
            TableFamily([(1.0, [[1.0]]), (1.0, [[2.0]])])

    def test_alpha_outside_domain(self):
        family = ConstantFamily([[2.0]], (0.0, 1.0))
        with self.assertRaises(DomainError):
            spectrum_at(family, 1.5)

    def test_reversed_and_restricted(self):
        family = AffineFamily([[0.0]], [[1.0]], (0.0, 20.0))
        self.assertEqual(pairs(family.reversed().spectrum_at(5.0)), [(15.0, 1)])
        self.assertIs(family.reversed().reversed(), family)
        part = family.restricted(2.0, 4.0)
        self.assertEqual(part.domain, (2.0, 4.0))
        with self.assertRaises(DomainError):
            part.spectrum_at(5.0)

    def test_constant_detection(self):
        self.assertTrue(ConstantFamily([[1.0]]).is_constant())
        self.assertTrue(AffineFamily([[1.0]], [[0.0]], (0, 1)).is_constant())
        self.assertFalse(AffineFamily([[1.0]], [[1.0]], (0, 1)).is_constant())


class SerializerTests(SimpleTestCase):
    def test_matrix_shape_is_checked(self):
        self.assertFalse(MatrixSerializer(data={'n': 2, 'rows': [[1, 2]]}).is_valid())
        self.assertTrue(MatrixSerializer(data={'n': 1, 'rows': [[1]]}).is_valid())

    def test_family_kinds(self):
        serializer = FamilySerializer(data={
            'kind': 'affine',
            'a0': {'n': 1, 'rows': [[0]]},
            'a1': {'n': 1, 'rows': [[1]]},
            'domain': [0, 20],
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        family = serializer.save()
        self.assertIsInstance(family, AffineFamily)

    def test_curves_family_with_external_domain(self):
        serializer = FamilySerializer(data={'kind': 'curves', 'curves': [{'mult': 1, 'points': [[0, 0], [50, 50]]}]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        family = serializer.save(domain=(0.0, 20.0))
        self.assertEqual(family.domain, (0.0, 20.0))
        self.assertEqual(pairs(family.spectrum_at(10.0)), [(10.0, 1)])

    def test_strict_schema(self):
        serializer = FamilySerializer(data={
            'kind': 'constant', 'matrix': {'n': 1, 'rows': [[1]], 'extra': 1}, 'domain': [0, 1],
        })
        self.assertFalse(serializer.is_valid())
        serializer = FamilySerializer(data={'kind': 'constant', 'a0': {'n': 1, 'rows': [[1]]}, 'domain': [0, 1]})
        self.assertFalse(serializer.is_valid())
