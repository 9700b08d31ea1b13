import math
import random
from functools import reduce
from itertools import combinations

from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework.test import APISimpleTestCase

from equideg.exceptions import CapacityError, DomainError, UnsupportedProductError

from .ring import (
    BurnsideElement,
    OrbitType,
    basic_degree,
    closed_form_coeff,
    coeff,
    compatible_subsets,
    expand_product,
    gcd_closure,
    multiply,
    pair_coeff,
    predicate_B,
    reduce_modes,
    two_adic_valuation,
)

H = OrbitType.dihedral
UNIT = OrbitType.unit()
RADIAL = OrbitType.radial()


def iterated_product(modes):
    """Multiply basic degrees one at a time, left to right."""
    return reduce(multiply, (basic_degree(m) for m in modes), BurnsideElement.one())


def random_element(rng):
    terms = {UNIT: rng.randint(-3, 3)}
    for _ in range(rng.randint(0, 4)):
        terms[H(rng.randint(1, 12))] = rng.randint(-3, 3)
    return BurnsideElement(terms)


class PredicateTests(SimpleTestCase):
    def test_examples(self):
        self.assertFalse(predicate_B({2, 3}))
        self.assertTrue(predicate_B({3, 5}))
        self.assertTrue(predicate_B({7}))
        self.assertTrue(predicate_B({2, 6, 10}))
        self.assertFalse(predicate_B({1, 3, 4}))

    def test_empty_set_is_rejected(self):
        with self.assertRaises(DomainError):
            predicate_B(set())

    def test_non_positive_modes_are_rejected(self):
        with self.assertRaises(DomainError):
            predicate_B({0, 2})
        with self.assertRaises(DomainError):
            predicate_B({True})

    def test_pairs_agree_with_two_adic_valuation(self):
        for x in range(1, 41):
            for y in range(1, 41):
                with self.subTest(x=x, y=y):
                    self.assertEqual(predicate_B({x, y}), two_adic_valuation(x) == two_adic_valuation(y))


class ElementTests(SimpleTestCase):
    def test_basic_degrees(self):
        self.assertEqual(basic_degree(0), BurnsideElement({UNIT: 1, RADIAL: -1}))
        self.assertEqual(basic_degree(3), BurnsideElement({UNIT: 1, H(3): -1}))
        self.assertEqual(basic_degree(1).to_dict(), {'unit': 1, 'radial': 0, 'dihedral': {'1': -1}, 'untracked': False})
        with self.assertRaises(DomainError):
            basic_degree(-1)

    def test_zero_coefficients_are_dropped(self):
        element = BurnsideElement({UNIT: 1, H(2): 0})
        self.assertEqual(element.support(), (UNIT,))
        self.assertEqual(basic_degree(2) - basic_degree(2), BurnsideElement.zero())

    def test_coeff(self):
        element = BurnsideElement({UNIT: 1, H(2): -3})
        self.assertEqual(coeff(element, H(2)), -3)
        self.assertEqual(coeff(BurnsideElement.one(), RADIAL), 0)
        self.assertEqual(coeff(expand_product({1, 2, 3}), H(2)), -1)

    def test_rendering_is_ordered_by_mode(self):
        element = BurnsideElement({H(10): 1, H(2): -2, UNIT: 1})
        self.assertEqual(list(element.to_dict()['dihedral']), ['2', '10'])

    def test_arithmetic(self):
        a = basic_degree(2)
        self.assertEqual(a + a, BurnsideElement({UNIT: 2, H(2): -2}))
        self.assertEqual(-a, BurnsideElement({UNIT: -1, H(2): 1}))
        self.assertEqual(a * a, BurnsideElement.one())


class MultiplyTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(multiply(BurnsideElement({H(2): 1}), BurnsideElement({H(6): 1})), BurnsideElement({H(2): 2}))
        self.assertEqual(multiply(BurnsideElement({H(2): 1}), BurnsideElement({H(3): 1})), BurnsideElement.zero())
        self.assertEqual(multiply(BurnsideElement({H(5): 1}), BurnsideElement.one()), BurnsideElement({H(5): 1}))

    def test_radial_products(self):
        with self.assertRaises(UnsupportedProductError):
            multiply(basic_degree(0), basic_degree(1))
        with self.assertRaises(UnsupportedProductError):
            multiply(basic_degree(0), basic_degree(0))
        self.assertEqual(multiply(BurnsideElement.one(), basic_degree(0)), basic_degree(0))
        self.assertEqual(multiply(basic_degree(0), BurnsideElement.one()), basic_degree(0))

    def test_untracked_flag_survives_products(self):
        flagged = BurnsideElement({UNIT: 1}, has_untracked=True)
        self.assertTrue(multiply(flagged, basic_degree(4)).has_untracked)
        self.assertTrue(multiply(basic_degree(4), flagged).has_untracked)
        self.assertTrue((flagged * BurnsideElement.zero()).has_untracked)

    def test_commutative_and_associative(self):
        rng = random.Random(20)
        for _ in range(200):
            a, b, c = random_element(rng), random_element(rng), random_element(rng)
            self.assertEqual(a * b, b * a)
            self.assertEqual((a * b) * c, a * (b * c))

    def test_pair_product_formula(self):
        for m in range(1, 21):
            for m_prime in range(1, 21):
                product = multiply(basic_degree(m), basic_degree(m_prime))
                if m == m_prime:
                    self.assertEqual(product, BurnsideElement.one())
                    continue
                for s in range(1, 21):
                    with self.subTest(m=m, m_prime=m_prime, s=s):
                        self.assertEqual(product.coeff(H(s)), pair_coeff(m, m_prime, s))


class ExpandProductTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(expand_product([1, 2, 3]), BurnsideElement({UNIT: 1, H(1): 1, H(2): -1, H(3): -1}))
        self.assertEqual(expand_product([4, 4]), BurnsideElement.one())
        self.assertEqual(expand_product([]), BurnsideElement.one())

    def test_involutive(self):
        for m in range(1, 51):
            self.assertEqual(expand_product([m, m]), BurnsideElement.one())

    def test_multiplicities_reduce_mod_two(self):
        self.assertEqual(reduce_modes([3, 1, 1, 3, 3, 2]), [2, 3])
        self.assertEqual(expand_product([1, 1, 1]), basic_degree(1))
        self.assertEqual(expand_product([6, 2, 6, 3]), expand_product([2, 3]))

    def test_matches_iterated_multiplication(self):
        rng = random.Random(5)
        for _ in range(150):
            modes = [rng.randint(1, 30) for _ in range(rng.randint(0, 9))]
            with self.subTest(modes=modes):
                self.assertEqual(expand_product(modes), iterated_product(modes))

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            expand_product(range(1, 25))
        with self.assertRaises(CapacityError):
            expand_product([1, 2, 3], powerset_cap=2)
        self.assertEqual(expand_product([5, 5, 5, 5], powerset_cap=0), BurnsideElement.one())


class ClosedFormTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(closed_form_coeff({1, 2, 3}, 1), 1)
        self.assertEqual(closed_form_coeff({7}, 7), -1)
        self.assertEqual(closed_form_coeff({2, 3}, 1), 0)
        self.assertEqual(closed_form_coeff(set(), 4), 0)

    def test_rejects_repeated_modes(self):
        with self.assertRaises(DomainError):
            closed_form_coeff([2, 2], 2)
        with self.assertRaises(CapacityError):
            closed_form_coeff({1, 2, 3}, 1, powerset_cap=2)

    def test_agrees_with_iterated_multiplication(self):
        universe = range(1, 13)
        checked = 0
        for size in range(0, 7):
            for modes in combinations(universe, size):
                product = iterated_product(modes)
                for m0 in universe:
                    self.assertEqual(
                        closed_form_coeff(modes, m0), product.coeff(H(m0)),
                        msg=f"M={modes} m0={m0}",
                    )
                checked += 1
        self.assertEqual(checked, 2510)

    def test_odd_for_members(self):
        rng = random.Random(1)
        for _ in range(500):
            modes = rng.sample(range(1, 41), rng.randint(1, 9))
            m0 = rng.choice(modes)
            with self.subTest(modes=modes, m0=m0):
                self.assertEqual(closed_form_coeff(modes, m0) % 2, 1)

    def test_gcd_closure(self):
        self.assertEqual(gcd_closure([4, 6, 9]), [1, 2, 3, 4, 6, 9])
        self.assertEqual(gcd_closure([]), [])
        rng = random.Random(8)
        for _ in range(50):
            modes = rng.sample(range(1, 31), rng.randint(1, 6))
            element = expand_product(modes)
            closure = set(gcd_closure(modes))
            self.assertTrue(set(element.dihedral_coeffs()) <= closure)
            self.assertEqual(
                closure,
                {reduce(math.gcd, subset) for k in range(1, len(modes) + 1) for subset in combinations(modes, k)},
            )

    def test_compatible_subsets_match_enumeration(self):
        self.assertEqual(list(compatible_subsets([1, 2, 3], 1)), [(1, 3)])
        rng = random.Random(12)
        for _ in range(100):
            modes = sorted(rng.sample(range(1, 25), rng.randint(2, 7)))
            m0 = rng.randint(1, 6)
            expected = {
                subset
                for k in range(2, len(modes) + 1)
                for subset in combinations(modes, k)
                if reduce(math.gcd, subset) == m0 and predicate_B(subset)
            }
            found = list(compatible_subsets(modes, m0))
            self.assertEqual(len(found), len(expected))
            self.assertEqual(set(found), expected)


class BurnsideApiTests(APISimpleTestCase):
    def test_product_with_coefficient(self):
        response = self.client.post(reverse('burnside-product'), {'modes': [1, 2, 3], 'coeff': 1}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['element']['dihedral'], {'1': 1, '2': -1, '3': -1})
        self.assertEqual(response.data['coeff']['value'], 1)
        self.assertTrue(response.data['coeff']['agree'])

    def test_involutive_product(self):
        response = self.client.post(reverse('burnside-product'), {'modes': [4, 4]}, format='json')
        self.assertEqual(response.data['element'], {'unit': 1, 'radial': 0, 'dihedral': {}, 'untracked': False})
        self.assertNotIn('coeff', response.data)

    def test_capacity(self):
        response = self.client.post(reverse('burnside-product'), {'modes': list(range(1, 30))}, format='json')
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data['error'], 'capacity')

    def test_invalid_modes(self):
        response = self.client.post(reverse('burnside-product'), {'modes': [0]}, format='json')
        self.assertEqual(response.status_code, 400)
