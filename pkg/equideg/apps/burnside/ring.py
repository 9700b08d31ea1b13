"""
Exact arithmetic in the tracked part of the Burnside ring A(O(2) x Z2).

Only three kinds of orbit types are carried: the unit (G), the radial type
(O(2) x Z1) and the maximal dihedral types (H_m). Products of two (H_m) only
ever land on an (H_s), so the tracked part is closed under the products the
degree formulas need.

Throughout, B(I) holds iff every pair x, y in I has (x + y)/gcd or
(x - y)/gcd even. Writing x = 2^a x' with x' odd, that happens exactly when
all elements of I share the same 2-adic valuation a.
"""
import math
import operator
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from django.conf import settings

from equideg.exceptions import CapacityError, DomainError, UnsupportedProductError

UNIT = 'unit'
RADIAL = 'radial'
DIHEDRAL = 'dihedral'


@dataclass(frozen=True, order=True)
class OrbitType:
    rank: int
    m: int = 0

    def __post_init__(self):
        if self.rank not in (0, 1, 2):
            raise DomainError(f"unknown orbit type rank {self.rank!r}")
        if self.rank == 2 and self.m < 1:
            raise DomainError(f"dihedral orbit types need a mode m >= 1, got {self.m!r}")

    @property
    def kind(self):
        return (UNIT, RADIAL, DIHEDRAL)[self.rank]

    @classmethod
    def unit(cls):
        return cls(0)

    @classmethod
    def radial(cls):
        return cls(1)

    @classmethod
    def dihedral(cls, m):
        return cls(2, _mode(m))

    def __str__(self):
        if self.rank == 0:
            return '(G)'
        if self.rank == 1:
            return '(O(2)xZ1)'
        return f'(H_{self.m})'


def _mode(m, minimum=1):
    try:
        value = operator.index(m)
    except TypeError:
        value = None
    if isinstance(m, bool) or value is None or value < minimum:
        raise DomainError(f"mode must be an integer >= {minimum}, got {m!r}")
    return value


def _modes(modes):
    return [_mode(m) for m in modes]


class BurnsideElement:
    """
    Finitely supported integer combination of tracked orbit types.

    Zero coefficients are never stored. ``has_untracked`` marks elements known
    to carry orbit types outside the tracked set; it survives every product.
    """
    __slots__ = ('_coeffs', 'has_untracked')

    def __init__(self, coeffs=None, has_untracked=False):
        cleaned = {}
        for orbit, value in (coeffs or {}).items():
            if not isinstance(orbit, OrbitType):
                raise DomainError(f"expected an OrbitType key, got {orbit!r}")
            if value:
                cleaned[orbit] = int(value)
        self._coeffs = dict(sorted(cleaned.items()))
        self.has_untracked = bool(has_untracked)

    @classmethod
    def one(cls):
        return cls({OrbitType.unit(): 1})

    @classmethod
    def zero(cls):
        return cls()

    def coeff(self, orbit):
        return self._coeffs.get(orbit, 0)

    def items(self):
        return self._coeffs.items()

    def support(self):
        return tuple(self._coeffs)

    @property
    def has_radial(self):
        return OrbitType.radial() in self._coeffs

    def is_one(self):
        return self._coeffs == {OrbitType.unit(): 1} and not self.has_untracked

    def dihedral_coeffs(self):
        return {orbit.m: value for orbit, value in self._coeffs.items() if orbit.rank == 2}

    def __eq__(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self._coeffs == other._coeffs and self.has_untracked == other.has_untracked

    def __hash__(self):
        return hash((tuple(self._coeffs.items()), self.has_untracked))

    def __add__(self, other):
        merged = Counter(self._coeffs)
        merged.update(other._coeffs)
        return BurnsideElement(merged, self.has_untracked or other.has_untracked)

    def __neg__(self):
        return BurnsideElement({orbit: -value for orbit, value in self._coeffs.items()}, self.has_untracked)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        terms = ' '.join(f'{value:+d}{orbit}' for orbit, value in self._coeffs.items()) or '0'
        return f'<BurnsideElement {terms}{" +untracked" if self.has_untracked else ""}>'

    def to_dict(self):
        return {
            'unit': self.coeff(OrbitType.unit()),
            'radial': self.coeff(OrbitType.radial()),
            'dihedral': {str(m): value for m, value in sorted(self.dihedral_coeffs().items())},
            'untracked': self.has_untracked,
        }


def predicate_B(modes):
    """Parity compatibility of every pair in a nonempty set of modes."""
    modes = sorted(set(_modes(modes)))
    if not modes:
        raise DomainError("the compatibility predicate is undefined on the empty set")
    for x, y in combinations(modes, 2):
        g = math.gcd(x, y)
        if ((x + y) // g) % 2 and ((x - y) // g) % 2:
            return False
    return True


def two_adic_valuation(m):
    m = _mode(m)
    return (m & -m).bit_length() - 1


def basic_degree(m):
    """(G) - (O(2)xZ1) for m = 0, (G) - (H_m) for m >= 1."""
    m = _mode(m, minimum=0)
    other = OrbitType.radial() if m == 0 else OrbitType.dihedral(m)
    return BurnsideElement({OrbitType.unit(): 1, other: -1})


def multiply(a, b):
    """
    Product of two tracked elements.

    (G) is the identity and (H_m)(H_m') = 2 (H_gcd) when B({m, m'}), zero
    otherwise. Products touching (O(2)xZ1) are only defined against the unit.
    """
    untracked = a.has_untracked or b.has_untracked
    if a.has_radial or b.has_radial:
        if a.is_one():
            return BurnsideElement(dict(b.items()), untracked)
        if b.is_one():
            return BurnsideElement(dict(a.items()), untracked)
        raise UnsupportedProductError(
            "products with the radial orbit type (O(2)xZ1) are not defined on the tracked lattice",
            left=a.to_dict(), right=b.to_dict(),
        )
    result = Counter()
    for left, x in a.items():
        for right, y in b.items():
            if left.rank == 0:
                result[right] += x * y
            elif right.rank == 0:
                result[left] += x * y
            elif predicate_B((left.m, right.m)):
                result[OrbitType.dihedral(math.gcd(left.m, right.m))] += 2 * x * y
    return BurnsideElement(result, untracked)


def reduce_modes(modes):
    """Modes of odd multiplicity, sorted; basic degrees square to (G)."""
    counts = Counter(_modes(modes))
    return sorted(m for m, count in counts.items() if count % 2)


def _check_cap(count, powerset_cap):
    cap = settings.EQUIDEG['POWERSET_CAP'] if powerset_cap is None else int(powerset_cap)
    if count > cap:
        raise CapacityError(
            f"{count} distinct modes exceed the power-set cap {cap}",
            modes=count, cap=cap,
        )


def expand_product(modes, powerset_cap=None):
    """
    The product of basic_degree(m) over the multiset ``modes``.

    Sum over subsets I of the reduced modes of 2^(|I|-1) (-1)^|I| B(I) (H_gcd(I)),
    the empty subset giving (G). Only subsets inside one 2-adic class satisfy B,
    and the term depends on I only through (gcd, |I|), so subsets are counted
    per class by that pair instead of listed.
    """
    distinct = reduce_modes(modes)
    _check_cap(len(distinct), powerset_cap)
    classes = {}
    for m in distinct:
        classes.setdefault(two_adic_valuation(m), []).append(m)

    coeffs = Counter({OrbitType.unit(): 1})
    for members in classes.values():
        # (gcd, size) -> number of subsets
        counts = Counter()
        for m in members:
            grown = Counter({(m, 1): 1})
            for (g, size), number in counts.items():
                grown[(math.gcd(g, m), size + 1)] += number
            counts.update(grown)
        for (g, size), number in counts.items():
            coeffs[OrbitType.dihedral(g)] += number * (-1) ** size * 2 ** (size - 1)
    return BurnsideElement(coeffs)


def distinct_modes(modes, powerset_cap=None):
    """Validate a set of distinct modes against the power-set cap."""
    modes = _modes(modes)
    if len(set(modes)) != len(modes):
        raise DomainError(f"closed form needs distinct modes, got {sorted(modes)}")
    _check_cap(len(modes), powerset_cap)
    return sorted(modes)


def compatible_subsets(modes, m0):
    """
    Yield every I within ``modes`` with |I| >= 2, gcd(I) = m0 and B(I), as sorted tuples.
    Only multiples of m0 can take part, and B fails for every superset of a failing set.
    """
    m0 = _mode(m0)
    candidates = sorted(m for m in modes if m % m0 == 0)
    chosen = []

    def extend(start, g):
        for index in range(start, len(candidates)):
            x = candidates[index]
            if not all(predicate_B((x, y)) for y in chosen):
                continue
            h = math.gcd(g, x)
            chosen.append(x)
            if len(chosen) >= 2 and h == m0:
                yield tuple(chosen)
            yield from extend(index + 1, h)
            chosen.pop()

    yield from extend(0, 0)


def closed_form_coeff(modes, m0, powerset_cap=None):
    """
    Coefficient of (H_m0) in the product of basic degrees over distinct ``modes``:

        -[m0 in M] + 2 * sum over I in P(M), |I| >= 2, of (-2)^(|I|-2) [m0 = gcd I] [B(I)]
    """
    modes = distinct_modes(modes, powerset_cap)
    m0 = _mode(m0)
    total = -1 if m0 in modes else 0
    for subset in compatible_subsets(modes, m0):
        total += 2 * (-2) ** (len(subset) - 2)
    return total


def coeff(element, orbit):
    return element.coeff(orbit)


def pair_coeff(m, m_prime, s):
    """
    Coefficient of (H_s) in basic_degree(m) * basic_degree(m') for m != m':
    -[s in {m, m'}] + 2 [s = gcd(m, m')] [B({m, m'})]. Equal modes give (G), so 0.
    """
    m, m_prime, s = _mode(m), _mode(m_prime), _mode(s)
    if m == m_prime:
        return 0
    value = -int(s in (m, m_prime))
    if s == math.gcd(m, m_prime) and predicate_B((m, m_prime)):
        value += 2
    return value


def gcd_closure(modes):
    """Sorted gcds of all nonempty subsets of ``modes``."""
    closure = set()
    for m in sorted(set(_modes(modes))):
        closure |= {math.gcd(g, m) for g in closure} | {m}
    return sorted(closure)


def product_report(modes, m0=None, powerset_cap=None):
    """Expanded product plus, when ``m0`` is given, the closed-form cross-check."""
    element = expand_product(modes, powerset_cap)
    report = {'modes': list(modes), 'reduced': reduce_modes(modes), 'element': element.to_dict()}
    if m0 is not None:
        value = element.coeff(OrbitType.dihedral(m0))
        closed = closed_form_coeff(report['reduced'], m0, powerset_cap)
        report['coeff'] = {'m0': m0, 'value': value, 'closed_form': closed, 'agree': value == closed}
    return report
