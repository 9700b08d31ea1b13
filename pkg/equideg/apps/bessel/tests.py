import json
import threading

import mpmath
import numpy as np
from django.test import SimpleTestCase, override_settings
from django.urls import reverse
from rest_framework.test import APISimpleTestCase

from equideg.exceptions import CapacityError, DomainError

from .zeros import BesselZeroTable, eval_bessel_j


def series_j(m, x):
    """Ascending series for J_m(x) in 40-digit arithmetic."""
    with mpmath.workdps(40):
        x = mpmath.mpf(x)
        half = x / 2
        term = half ** m / mpmath.factorial(m)
        total = term
        k = 0
        while abs(term) > mpmath.mpf(10) ** -45 or k < m:
            k += 1
            term = -term * half * half / (k * (k + m))
            total += term
        return total


def series_zero(m, lo, hi):
    """Bisect a sign change of the series oracle down to 1e-15."""
    f_lo = series_j(m, lo)
    for _ in range(80):
        mid = (lo + hi) / 2
        f_mid = series_j(m, mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2


class EvalBesselTests(SimpleTestCase):
    def test_values_at_origin(self):
        self.assertEqual(eval_bessel_j(0, 0), 1.0)
        self.assertEqual(eval_bessel_j(3, 0), 0.0)

    def test_first_zero_of_j0(self):
        self.assertLess(abs(eval_bessel_j(0, 2.404825557695773)), 1e-10)

    def test_accuracy_against_series(self):
        for m in (0, 1, 2, 5, 10):
            for x in (0.1, 1.0, 3.7, 8.25, 15.0, 24.0):
                with self.subTest(m=m, x=x):
                    self.assertAlmostEqual(eval_bessel_j(m, x), float(series_j(m, x)), delta=1e-12)

    def test_large_argument_against_mpmath(self):
        for m in (0, 3, 40):
            for x in (50.0, 77.5, 100.0):
                with self.subTest(m=m, x=x):
                    self.assertAlmostEqual(eval_bessel_j(m, x), float(mpmath.besselj(m, x)), delta=1e-12)

    def test_rejects_bad_input(self):
        with self.assertRaises(DomainError):
            eval_bessel_j(0, float('nan'))
        with self.assertRaises(DomainError):
            eval_bessel_j(0, -1.0)
        with self.assertRaises(DomainError):
            eval_bessel_j(-1, 1.0)
        with self.assertRaises(CapacityError):
            eval_bessel_j(257, 1.0)

    @override_settings(EQUIDEG={
        'MODE_CAP': 4, 'INDEX_CAP': 8, 'POWERSET_CAP': 22, 'BESSEL_TOLERANCE': 1e-13,
        'SPECTRAL_TOLERANCE': 1e-9, 'NONDEGENERACY_GUARD': 1e-6, 'GRID_DIVISIONS': 1024,
        'CROSSING_TOLERANCE': 1e-10, 'ZERO_TABLE_PATH': '',
    })
    def test_mode_cap_follows_settings(self):
        with self.assertRaises(CapacityError):
            eval_bessel_j(5, 1.0)


class ZeroTableTests(SimpleTestCase):
    def setUp(self):
        self.table = BesselZeroTable()

    def test_known_zeros(self):
        self.assertAlmostEqual(self.table.zero(0, 1), 2.404825557695773, delta=1e-12)
        self.assertAlmostEqual(self.table.zero(1, 1), 3.831705970207512, delta=1e-12)
        self.assertAlmostEqual(self.table.zero(0, 2), 5.520078110286311, delta=1e-12)

    def test_zeros_match_series_oracle(self):
        brackets = {
            0: [(2, 3), (5, 6), (8, 9)],
            1: [(3, 4.5), (6.5, 7.5), (10, 10.5)],
            2: [(5, 5.5), (8, 8.9), (11.5, 12)],
            3: [(6, 6.6), (9.5, 10), (13, 13.2)],
        }
        for m, intervals in brackets.items():
            for n, (lo, hi) in enumerate(intervals, start=1):
                with self.subTest(m=m, n=n):
                    expected = float(series_zero(m, mpmath.mpf(lo), mpmath.mpf(hi)))
                    self.assertAlmostEqual(self.table.zero(m, n), expected, delta=1e-10)

    def test_laplacian_eigenvalues(self):
        self.assertAlmostEqual(self.table.laplacian_eigenvalue(0, 1), 5.783185962946785, delta=1e-10)
        self.assertAlmostEqual(self.table.laplacian_eigenvalue(1, 1), 14.681970642123893, delta=1e-10)
        self.assertAlmostEqual(self.table.laplacian_eigenvalue(2, 1), 26.374616427163247, delta=1e-10)
        self.assertEqual(self.table.laplacian_eigenvalue(1, 2), self.table.zero(1, 2) ** 2)

    def test_zeros_below(self):
        self.assertEqual(self.table.zeros_below(0, 5.0), [])
        self.assertEqual(self.table.zeros_below(5, 0.0), [])
        below = self.table.zeros_below(0, 31.0)
        self.assertEqual([n for n, _ in below], [1, 2])
        self.assertAlmostEqual(below[0][1], 5.7832, places=3)
        self.assertAlmostEqual(below[1][1], 30.4713, places=3)

    def test_max_mode(self):
        self.assertIsNone(self.table.max_mode(5.0))
        self.assertEqual(self.table.max_mode(15.0), 1)
        self.assertEqual(self.table.max_mode(27.0), 2)
        self.assertAlmostEqual(self.table.zero(3, 1), 6.3802, places=4)

    def test_zeros_vanish_and_interlace(self):
        self.table.build(400.0)
        for entry in self.table.entries():
            self.assertLess(abs(eval_bessel_j(entry.m, entry.zero)), 1e-8)
            self.assertEqual(entry.eigenvalue, entry.zero ** 2)
        for m in range(0, 12):
            self.assertLess(self.table.zero(m, 1), self.table.zero(m + 1, 1))
            self.assertLess(self.table.zero(m + 1, 1), self.table.zero(m, 2))
            for n in range(1, 4):
                self.assertLess(self.table.zero(m, n), self.table.zero(m, n + 1))
                self.assertLess(self.table.zero(m, n), self.table.zero(m + 1, n))

    def test_count_matches_sign_changes_on_grid(self):
        for m, bound in ((0, 200.0), (1, 350.0), (4, 500.0)):
            grid = np.arange(0.05, np.sqrt(bound) + 1e-12, 0.05)
            values = [eval_bessel_j(m, x) for x in grid]
            changes = sum(1 for a, b in zip(values, values[1:]) if a * b < 0)
            with self.subTest(m=m):
                self.assertEqual(len(self.table.zeros_below(m, bound)), changes)

    def test_deterministic(self):
        other = BesselZeroTable()
        self.assertEqual(self.table.zero(7, 5), other.zero(7, 5))
        self.assertEqual(self.table.zero(7, 5), self.table.zero(7, 5))

    def test_large_mode_first_zero(self):
        z = self.table.zero(256, 1)
        self.assertGreater(z, 256)
        self.assertLess(mpmath.besselj(256, z - 1e-9) * mpmath.besselj(256, z + 1e-9), 0)

    def test_caps(self):
        table = BesselZeroTable(mode_cap=3, index_cap=2)
        with self.assertRaises(CapacityError):
            table.zero(4, 1)
        with self.assertRaises(CapacityError):
            table.zero(0, 3)
        with self.assertRaises(CapacityError):
            table.zeros_below(0, 100.0)
        with self.assertRaises(CapacityError):
            table.max_mode(1000.0)

    def test_concurrent_fill_is_consistent(self):
        results = []

        def worker():
            results.append(tuple(self.table.zero(2, n) for n in range(1, 30)))

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        self.assertEqual(len(set(results)), 1)

    def test_dump_and_load(self):
        self.table.build(60.0)
        text = self.table.dump()
        records = json.loads(text)
        self.assertEqual(records, sorted(records, key=lambda r: (r['m'], r['n'])))
        self.assertEqual(set(records[0]), {'m', 'n', 'zero', 'eigenvalue'})
        loaded = BesselZeroTable.load(text)
        self.assertEqual(loaded.entries(), self.table.entries())

    def test_load_rejects_corrupt_tables(self):
        with self.assertRaises(DomainError):
            BesselZeroTable.load('[{"m": 0, "n": 1, "zero": 2.5, "eigenvalue": 6.25}]')
        with self.assertRaises(DomainError):
            BesselZeroTable.load('[{"m": 0, "n": 2, "zero": 5.520078110286311, "eigenvalue": 30.47}]')
        with self.assertRaises(DomainError):
            BesselZeroTable.load('not json')

    def test_load_rejects_malformed_records(self):
        malformed = (
            '{"m": 0}', '[{"m": 0, "n": 1}]', '[1]',
            '[{"m": "x", "n": 1, "zero": 2.4}]', '[{"m": 0, "n": 1, "zero": NaN}]',
        )
        for text in malformed:
            with self.subTest(text=text), self.assertRaises(DomainError):
                BesselZeroTable.load(text)


class BesselApiTests(APISimpleTestCase):
    def test_zero_endpoint(self):
        response = self.client.post(reverse('bessel-zeros'), {'m': 0, 'n': 1}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertAlmostEqual(response.data['zero'], 2.404825557695773, delta=1e-12)

    def test_below_endpoint(self):
        response = self.client.post(reverse('bessel-below'), {'bound': 15.0}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['max_mode'], 1)
        self.assertEqual([(r['m'], r['n']) for r in response.data['eigenvalues']], [(0, 1), (1, 1)])

    def test_unknown_fields_rejected(self):
        response = self.client.post(reverse('bessel-zeros'), {'m': 0, 'n': 1, 'x': 2}, format='json')
        self.assertEqual(response.status_code, 400)

    def test_capacity_error_rendered(self):
        response = self.client.post(reverse('bessel-zeros'), {'m': 9999, 'n': 1}, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['error'], 'capacity')
