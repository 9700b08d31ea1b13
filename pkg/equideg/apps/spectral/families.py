"""
One-parameter families alpha -> A(alpha) on a closed interval [alpha_lo, alpha_hi].

Four kinds are supported: a constant matrix, an affine family A0 + alpha*A1,
a sampled table of (alpha, matrix) pairs interpolated linearly, and explicit
spectrum curves that bypass numerical eigenvalue extraction.
"""
import math
from dataclasses import dataclass

import numpy as np

from equideg.exceptions import DomainError

from .spectrum import Spectrum, SpectrumEntry, as_matrix, real_eigenvalues, real_spectrum


def _domain(lo, hi):
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise DomainError(f"domain must be a finite interval [lo, hi] with lo <= hi, got [{lo}, {hi}]")
    return lo, hi


class MatrixFamily:
    """Base class; subclasses implement ``_matrix_at`` or override ``spectrum_at``."""
    kind = None

    def __init__(self, domain):
        self.domain = _domain(*domain)

    @property
    def lo(self):
        return self.domain[0]

    @property
    def hi(self):
        return self.domain[1]

    @property
    def size(self):
        raise NotImplementedError

    def check_alpha(self, alpha):
        alpha = float(alpha)
        # endpoints are allowed a rounding ulp so mirrored and split grids land inside
        slack = 4 * np.finfo(float).eps * max(1.0, abs(self.lo), abs(self.hi))
        if not math.isfinite(alpha) or alpha < self.lo - slack or alpha > self.hi + slack:
            raise DomainError(f"alpha={alpha!r} lies outside the family domain [{self.lo}, {self.hi}]")
        return min(max(alpha, self.lo), self.hi)

    def matrix_at(self, alpha):
        return self._matrix_at(self.check_alpha(alpha))

    def _matrix_at(self, alpha):
        raise NotImplementedError

    def spectrum_at(self, alpha, tol=None):
        return real_spectrum(self.matrix_at(alpha), tol)

    def eigenvalues_at(self, alpha, tol=None):
        """Real eigenvalues at alpha repeated by algebraic multiplicity; used to detect crossings."""
        return real_eigenvalues(self.matrix_at(alpha), tol)

    def reversed(self):
        """The same family traversed with alpha -> lo + hi - alpha."""
        return ReversedFamily(self)

    def restricted(self, lo, hi):
        """The same family on a sub-interval of its domain."""
        lo, hi = _domain(lo, hi)
        self.check_alpha(lo)
        self.check_alpha(hi)
        return RestrictedFamily(self, (lo, hi))

    def is_constant(self):
        return False


class ConstantFamily(MatrixFamily):
    kind = 'constant'

    def __init__(self, matrix, domain=(0.0, 1.0)):
        super().__init__(domain)
        self.matrix = as_matrix(matrix)

    @property
    def size(self):
        return self.matrix.shape[0]

    def _matrix_at(self, alpha):
        return self.matrix

    def is_constant(self):
        return True


class AffineFamily(MatrixFamily):
    """A(alpha) = A0 + alpha * A1."""
    kind = 'affine'

    def __init__(self, a0, a1, domain):
        super().__init__(domain)
        self.a0 = as_matrix(a0)
        self.a1 = as_matrix(a1)
        if self.a0.shape != self.a1.shape:
            raise DomainError(f"affine family needs matching shapes, got {self.a0.shape} and {self.a1.shape}")

    @property
    def size(self):
        return self.a0.shape[0]

    def _matrix_at(self, alpha):
        return self.a0 + alpha * self.a1

    def is_constant(self):
        return not np.any(self.a1)


class TableFamily(MatrixFamily):
    """Piecewise-linear interpolation between sampled matrices; the domain is the sample range."""
    kind = 'table'

    def __init__(self, samples):
        samples = [(float(alpha), as_matrix(matrix)) for alpha, matrix in samples]
        if len(samples) < 2:
            raise DomainError("a sampled family needs at least two samples")
        alphas = [alpha for alpha, _ in samples]
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise DomainError("sampled family alpha values must be strictly increasing")
        shapes = {matrix.shape for _, matrix in samples}
        if len(shapes) != 1:
            raise DomainError(f"sampled matrices must share one shape, got {sorted(shapes)}")
        super().__init__((alphas[0], alphas[-1]))
        self.alphas = np.array(alphas)
        self.matrices = np.stack([matrix for _, matrix in samples])

    @property
    def size(self):
        return self.matrices.shape[1]

    def _matrix_at(self, alpha):
        k = int(np.clip(np.searchsorted(self.alphas, alpha, side='right') - 1, 0, len(self.alphas) - 2))
        a0, a1 = self.alphas[k], self.alphas[k + 1]
        t = (alpha - a0) / (a1 - a0)
        return (1 - t) * self.matrices[k] + t * self.matrices[k + 1]

    def is_constant(self):
        return bool(np.all(self.matrices == self.matrices[0]))


@dataclass(frozen=True)
class SpectrumCurve:
    """One eigenvalue branch alpha -> mu(alpha) with a fixed geometric multiplicity."""
    mult: int
    function: object
    points: tuple = None

    @classmethod
    def piecewise_linear(cls, points, mult=1):
        points = tuple((float(a), float(mu)) for a, mu in points)
        if not points:
            raise DomainError("a spectrum curve needs at least one point")
        xs = np.array([a for a, _ in points])
        ys = np.array([mu for _, mu in points])
        if np.any(np.diff(xs) <= 0):
            raise DomainError("curve alpha values must be strictly increasing")
        if not np.all(np.isfinite(ys)):
            raise DomainError("curve values must be finite")
        return cls(int(mult), lambda alpha: float(np.interp(alpha, xs, ys)), points)

    def __call__(self, alpha):
        return float(self.function(alpha))


class CurvesFamily(MatrixFamily):
    """
    Explicit spectrum curves. Curves meeting at one alpha are merged into a
    single entry whose multiplicity is the sum of theirs.
    """
    kind = 'curves'

    def __init__(self, curves, domain, merge_tol=1e-12):
        super().__init__(domain)
        self.curves = tuple(curves)
        self.merge_tol = merge_tol

    @property
    def size(self):
        return sum(curve.mult for curve in self.curves)

    def branch_values(self, alpha):
        alpha = self.check_alpha(alpha)
        return [(curve(alpha), curve.mult) for curve in self.curves]

    def spectrum_at(self, alpha, tol=None):
        values = sorted(self.branch_values(alpha), key=lambda item: -item[0])
        merged = []
        for mu, mult in values:
            if merged and abs(merged[-1][0] - mu) <= self.merge_tol * max(1.0, abs(mu)):
                merged[-1][1] += mult
            else:
                merged.append([mu, mult])
        return Spectrum(tuple(SpectrumEntry(mu, mult) for mu, mult in merged))

    def eigenvalues_at(self, alpha, tol=None):
        values = self.branch_values(alpha)
        return np.sort(np.repeat([mu for mu, _ in values], [mult for _, mult in values]))

    def is_constant(self):
        return all(curve.points is not None and len({mu for _, mu in curve.points}) <= 1 for curve in self.curves)


class ReversedFamily(MatrixFamily):

    def __init__(self, base):
        super().__init__(base.domain)
        self.base = base
        self.kind = base.kind

    @property
    def size(self):
        return self.base.size

    def _mirror(self, alpha):
        return self.base.check_alpha(self.lo + self.hi - self.check_alpha(alpha))

    def matrix_at(self, alpha):
        return self.base.matrix_at(self._mirror(alpha))

    def spectrum_at(self, alpha, tol=None):
        return self.base.spectrum_at(self._mirror(alpha), tol)

    def eigenvalues_at(self, alpha, tol=None):
        return self.base.eigenvalues_at(self._mirror(alpha), tol)

    def reversed(self):
        return self.base

    def is_constant(self):
        return self.base.is_constant()


class RestrictedFamily(MatrixFamily):

    def __init__(self, base, domain):
        super().__init__(domain)
        self.base = base
        self.kind = base.kind

    @property
    def size(self):
        return self.base.size

    def matrix_at(self, alpha):
        return self.base.matrix_at(self.check_alpha(alpha))

    def spectrum_at(self, alpha, tol=None):
        return self.base.spectrum_at(self.check_alpha(alpha), tol)

    def eigenvalues_at(self, alpha, tol=None):
        return self.base.eigenvalues_at(self.check_alpha(alpha), tol)

    def is_constant(self):
        return self.base.is_constant()


def spectrum_at(family, alpha, tol=None):
    """Spectrum of A(alpha) (or the explicit curve values) at a point of the domain."""
    return family.spectrum_at(alpha, tol)
