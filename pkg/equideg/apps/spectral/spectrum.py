"""
Real spectra of N x N matrices with geometric multiplicities, and the
non-degeneracy check against the Dirichlet spectrum of the disc.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from equideg.apps.bessel.zeros import default_table
from equideg.exceptions import DomainError

logger = logging.getLogger(__name__)

# Eigenvalues of a defective block are perturbed at O(eps^(1/k)); candidate
# groups use a width of at least eps^(1/3) relative to the matrix scale.
MIN_CLUSTER_WIDTH = np.finfo(float).eps ** (1 / 3)


@dataclass(frozen=True)
class SpectrumEntry:
    mu: float
    geom_mult: int

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise DomainError(f"eigenvalue must be finite, got {self.mu!r}")
        if self.geom_mult < 1:
            raise DomainError(f"geometric multiplicity must be positive, got {self.geom_mult!r}")

    def as_dict(self):
        return {'mu': self.mu, 'mult': self.geom_mult}


@dataclass(frozen=True)
class Spectrum:
    """Real spectrum of a matrix plus the number of complex-conjugate pairs excluded from it."""
    entries: tuple
    complex_pairs: int = 0

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    @property
    def max_mu(self):
        return max((entry.mu for entry in self.entries), default=None)


@dataclass(frozen=True)
class Violation:
    """Eigenvalue j (1-based) sits within the guard of s_{m,n}."""
    j: int
    m: int
    n: int
    mu: float
    eigenvalue: float

    def as_tuple(self):
        return (self.j, self.m, self.n)

    def as_dict(self):
        return {'j': self.j, 'm': self.m, 'n': self.n, 'mu': self.mu, 's': self.eigenvalue}


def as_spectrum(spectrum):
    """Accept a Spectrum or any iterable of SpectrumEntry / (mu, mult) pairs."""
    if isinstance(spectrum, Spectrum):
        return spectrum
    entries = []
    for item in spectrum:
        if not isinstance(item, SpectrumEntry):
            mu, mult = item
            item = SpectrumEntry(float(mu), int(mult))
        entries.append(item)
    return Spectrum(tuple(entries))


def as_matrix(matrix):
    """Validate and convert a square, finite, real matrix."""
    try:
        array = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError):
        raise DomainError("matrix entries must be real numbers") from None
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
        raise DomainError(f"matrix must be square and nonempty, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise DomainError("matrix entries must be finite")
    return array


def _tolerance(tol):
    tol = settings.EQUIDEG['SPECTRAL_TOLERANCE'] if tol is None else float(tol)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    return tol


def _real_eigenvalues(a, width):
    """Sorted real eigenvalues of ``a`` with algebraic multiplicity, and the number of complex pairs."""
    eigenvalues = np.linalg.eigvals(a)
    is_real = np.abs(eigenvalues.imag) <= width
    return np.sort(eigenvalues.real[is_real]), int(np.count_nonzero(~is_real)) // 2


def real_eigenvalues(matrix, tol=None):
    """Real eigenvalues of ``matrix`` repeated by algebraic multiplicity, in increasing order."""
    a = as_matrix(matrix)
    width = max(_tolerance(tol), MIN_CLUSTER_WIDTH) * max(np.linalg.norm(a, 2), 1.0)
    return _real_eigenvalues(a, width)[0]


def real_spectrum(matrix, tol=None):
    """
    Distinct real eigenvalues of ``matrix`` with geometric multiplicities.

    Nearby computed eigenvalues are grouped, and a group counts as one
    eigenvalue only when A - mu I has a numerical kernel at its centroid,
    threshold ``tol * ||A||``; its multiplicity is that kernel dimension.
    Complex pairs are counted, not returned.
    """
    tol = _tolerance(tol)
    a = as_matrix(matrix)
    scale = max(np.linalg.norm(a, 2), 1.0)
    width = max(tol, MIN_CLUSTER_WIDTH) * scale

    values, complex_pairs = _real_eigenvalues(a, width)
    if complex_pairs:
        logger.warning("excluded %d complex-conjugate eigenvalue pair(s) from the real spectrum", complex_pairs)

    clusters = []
    for value in values:
        if clusters and value - clusters[-1][-1] <= width:
            clusters[-1].append(value)
        else:
            clusters.append([value])

    entries = []
    for cluster in clusters:
        entries.extend(_resolve_cluster(a, cluster, tol * scale))
    # descending order puts the eigenvalues that meet the most s_{m,n} first
    entries.sort(key=lambda entry: -entry.mu)
    return Spectrum(tuple(entries), complex_pairs)


def _nullity(a, mu, threshold):
    return int(a.shape[0] - np.linalg.matrix_rank(a - mu * np.eye(a.shape[0]), tol=threshold))


def _resolve_cluster(a, cluster, threshold):
    """
    Entries for one group of nearby computed eigenvalues.

    The group is one eigenvalue only if A - mu I is singular at its centroid;
    otherwise it is split at its widest gap and each side is resolved again.
    """
    centroid = float(np.mean(cluster))
    nullity = _nullity(a, centroid, threshold)
    if nullity or len(cluster) == 1:
        return [SpectrumEntry(centroid, max(nullity, 1))]
    cut = int(np.argmax(np.diff(cluster))) + 1
    return _resolve_cluster(a, cluster[:cut], threshold) + _resolve_cluster(a, cluster[cut:], threshold)


def check_nondegeneracy(spectrum, table=None, guard=None):
    """
    Return the (j, m, n) violations of assumption (D); an empty list means ok.

    mu_j violates (D) at s_{m,n} when |mu_j - s_{m,n}| <= guard * max(1, |mu_j|).
    """
    spectrum = as_spectrum(spectrum)
    table = default_table() if table is None else table
    guard = settings.EQUIDEG['NONDEGENERACY_GUARD'] if guard is None else float(guard)
    if not guard > 0:
        raise DomainError(f"guard must be positive, got {guard!r}")
    top = spectrum.max_mu
    if top is None:
        return []
    bound = top + guard * max(1.0, abs(top))
    levels = table.eigenvalues_below(bound)
    violations = []
    for j, entry in enumerate(spectrum, start=1):
        width = guard * max(1.0, abs(entry.mu))
        for m, n, s in levels:
            if abs(entry.mu - s) <= width:
                violations.append(Violation(j, m, n, entry.mu, s))
    return violations
