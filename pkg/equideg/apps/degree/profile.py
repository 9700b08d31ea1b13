"""
Index sets of the linearized problem at A.

The operator eigenvalue attached to (m, n, j) is 1 - mu_j / s_{m,n}; it is
negative exactly when s_{m,n} < mu_j. Those triples form sigma0. Per mode m,
only eigenvalues of odd geometric multiplicity change the degree, so the
counts n^m keep just those, and S collects the modes m >= 1 whose count is odd.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field

from equideg.apps.bessel.zeros import default_table
from equideg.apps.burnside.ring import BurnsideElement, closed_form_coeff, expand_product
from equideg.apps.spectral.spectrum import as_spectrum, check_nondegeneracy
from equideg.exceptions import DegeneracyError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class IndexTriple:
    m: int
    n: int
    j: int

    def as_dict(self):
        return {'m': self.m, 'n': self.n, 'j': self.j}


@dataclass(frozen=True)
class ModeProfile:
    sigma0: tuple
    counts: dict
    s_set: tuple
    n0: int
    complex_warnings: int = 0
    spectrum: object = field(default=None, compare=False, repr=False)

    @property
    def radial_indicator(self):
        return 'odd' if self.n0 % 2 else 'even'

    def count(self, m):
        return self.counts.get(m, 0)

    def as_dict(self):
        return {
            'sigma0': [t.as_dict() for t in self.sigma0],
            'counts': {str(m): c for m, c in sorted(self.counts.items())},
            'S': list(self.s_set),
            'n0': self.n0,
            'complex_pairs': self.complex_warnings,
        }


def checked_spectrum(spectrum, table=None, guard=None):
    """Return the spectrum after the non-degeneracy check; raise DegeneracyError otherwise."""
    spectrum = as_spectrum(spectrum)
    violations = check_nondegeneracy(spectrum, table, guard)
    if violations:
        listed = ', '.join(f'mu_{v.j} ~ s_{{{v.m},{v.n}}}' for v in violations)
        raise DegeneracyError(f"spectrum is degenerate: {listed}", violations)
    return spectrum


def dominated_zeros(table, m, mu):
    """Number of n with s_{m,n} < mu."""
    return len(table.zeros_below(m, mu)) if mu > 0 else 0


def build_profile(spectrum, table=None, guard=None):
    table = default_table() if table is None else table
    spectrum = checked_spectrum(spectrum, table, guard)
    sigma0 = []
    counts = Counter()
    for j, entry in enumerate(spectrum, start=1):
        top = table.max_mode(entry.mu) if entry.mu > 0 else None
        if top is None:
            continue
        for m in range(top + 1):
            below = table.zeros_below(m, entry.mu)
            sigma0.extend(IndexTriple(m, n, j) for n, _ in below)
            counts[m] += len(below) if entry.geom_mult % 2 else 0
    sigma0.sort()
    modes = sorted({t.m for t in sigma0})
    profile = ModeProfile(
        sigma0=tuple(sigma0),
        counts={m: counts[m] for m in modes},
        s_set=tuple(m for m in modes if m >= 1 and counts[m] % 2),
        n0=counts[0],
        complex_warnings=spectrum.complex_pairs,
        spectrum=spectrum,
    )
    logger.debug("profile: |sigma0|=%d S=%s n0=%d", len(sigma0), profile.s_set, profile.n0)
    return profile


def degree_coeff(profile, m0, powerset_cap=None):
    """Coefficient of (H_m0) in the degree of the linearization; radial factors leave it unchanged."""
    return closed_form_coeff(profile.s_set, m0, powerset_cap)


def degree_element(profile, powerset_cap=None):
    """
    Tracked part of the degree, the product of basic degrees over S.
    The radial factor is not multiplied in; an odd n0 marks the result untracked.
    """
    element = expand_product(profile.s_set, powerset_cap)
    return BurnsideElement(dict(element.items()), has_untracked=bool(profile.n0 % 2))


def annulus_coeff(profile, m0, powerset_cap=None):
    """Coefficient of (H_m0) in (G) minus the degree of the linearization."""
    return -degree_coeff(profile, m0, powerset_cap)


def mode_parity(spectrum, table=None, m=1, guard=None):
    """Number of odd-multiplicity eigenvalues dominating an odd number of zeros of J_m."""
    table = default_table() if table is None else table
    spectrum = checked_spectrum(spectrum, table, guard)
    return sum(
        1 for entry in spectrum
        if entry.geom_mult % 2 and dominated_zeros(table, m, entry.mu) % 2
    )


def theorem11_predicate(spectrum, table=None, m=1, guard=None):
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise DomainError(f"mode must be a positive integer, got {m!r}")
    return mode_parity(spectrum, table, m, guard) % 2 == 1
