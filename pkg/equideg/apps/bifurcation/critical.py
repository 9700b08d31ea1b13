"""
Critical points of a matrix family alpha -> A(alpha).

alpha0 is critical when some real eigenvalue mu_j(alpha0) equals a Dirichlet
eigenvalue s_{m,n}. For every level s the number of eigenvalues, counted with
algebraic multiplicity, strictly above s is constant away from critical
points, so a change of that count between two grid points brackets a
crossing, which is then bisected down to the crossing tolerance.

Regular brackets are taken from the gaps between consecutive critical points,
so the right end of one bracket is the left end of the next.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from equideg.apps.bessel.zeros import default_table
from equideg.apps.spectral.spectrum import check_nondegeneracy
from equideg.exceptions import DegeneracyError, DomainError, NonIsolatedCriticalityError

logger = logging.getLogger(__name__)

# crossings closer than this many tolerances form one critical point
MERGE_FACTOR = 10
# dyadic levels tried when looking for a regular point inside a gap
GAP_LEVELS = 6


@dataclass(frozen=True)
class Crossing:
    m: int
    n: int
    j: int
    direction: str
    mult: int
    alpha: float

    def as_dict(self):
        return {'m': self.m, 'n': self.n, 'j': self.j, 'direction': self.direction, 'mult': self.mult}


@dataclass(frozen=True)
class CriticalPoint:
    alpha: float
    crossings: tuple
    bracket: tuple

    def as_dict(self):
        return {
            'alpha': self.alpha,
            'crossings': [c.as_dict() for c in self.crossings],
            'bracket': list(self.bracket),
        }


def count_above(values, s):
    """Number of eigenvalues above s, counted with algebraic multiplicity."""
    return int(np.count_nonzero(np.asarray(values) > s))


class CriticalPointSearch:
    """One scan of a family; holds the options shared by detection, refinement and bracketing."""

    def __init__(self, family, grid_step=None, tol=None, table=None, guard=None, spectral_tol=None):
        self.family = family
        self.table = default_table() if table is None else table
        self.guard = guard
        self.spectral_tol = spectral_tol
        self.tol = settings.EQUIDEG['CROSSING_TOLERANCE'] if tol is None else float(tol)
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        lo, hi = family.domain
        if grid_step is None:
            grid_step = (hi - lo) / settings.EQUIDEG['GRID_DIVISIONS']
        grid_step = float(grid_step)
        if hi > lo and not (math.isfinite(grid_step) and grid_step > 0):
            raise DomainError(f"grid_step must be positive, got {grid_step!r}")
        self.grid_step = grid_step

    def width(self, alpha):
        return self.tol * max(1.0, abs(alpha))

    def spectrum(self, alpha):
        return self.family.spectrum_at(alpha, self.spectral_tol)

    def eigenvalues(self, alpha):
        return self.family.eigenvalues_at(alpha, self.spectral_tol)

    def is_regular(self, alpha):
        return not check_nondegeneracy(self.spectrum(alpha), self.table, self.guard)

    def run(self):
        lo, hi = self.family.domain
        if hi <= lo or self.family.is_constant():
            if not self.is_regular(lo):
                raise NonIsolatedCriticalityError(
                    f"every alpha in [{lo}, {hi}] is critical",
                    violations=check_nondegeneracy(self.spectrum(lo), self.table, self.guard),
                )
            return []
        grid = np.linspace(lo, hi, int(math.ceil((hi - lo) / self.grid_step)) + 1)
        spectra = [self.spectrum(alpha) for alpha in grid]
        self._check_isolation(grid, spectra)

        top = max((spectrum.max_mu for spectrum in spectra if len(spectrum)), default=None)
        if top is None or top <= 0:
            return []
        levels = self.table.eigenvalues_below(top * (1 + 1e-9) + 1e-9)
        values = [self.eigenvalues(alpha) for alpha in grid]
        crossings = []
        for i in range(len(grid) - 1):
            for m, n, s in levels:
                before, after = count_above(values[i], s), count_above(values[i + 1], s)
                if before != after:
                    crossings.append(self._refine(m, n, s, float(grid[i]), float(grid[i + 1]), before, after))
        crossings.sort(key=lambda c: (c.alpha, c.m, c.n, c.j))
        return self._bracket(self._merge(crossings))

    def _check_isolation(self, grid, spectra):
        for alpha, spectrum in ((grid[0], spectra[0]), (grid[-1], spectra[-1])):
            violations = check_nondegeneracy(spectrum, self.table, self.guard)
            if violations:
                raise DegeneracyError(
                    f"the domain endpoint alpha={float(alpha)!r} is critical; it has no regular neighbourhood",
                    violations=violations,
                )
        previous = None
        for alpha, spectrum in zip(grid, spectra):
            violations = check_nondegeneracy(spectrum, self.table, self.guard)
            if violations and previous is not None:
                raise NonIsolatedCriticalityError(
                    f"consecutive grid points {previous} and {alpha} are both critical; "
                    f"the critical set is not isolated at grid step {self.grid_step}",
                    violations=violations,
                )
            previous = float(alpha) if violations else None

    def _refine(self, m, n, s, a, b, before, after):
        while b - a > self.width(a):
            mid = 0.5 * (a + b)
            if count_above(self.eigenvalues(mid), s) == before:
                a = mid
            else:
                b = mid
        up = after > before
        return Crossing(
            m=m, n=n,
            # rank, counted from the top, of the eigenvalue on the side where it lies above s
            j=max(before, after),
            direction='up' if up else 'down',
            mult=abs(after - before),
            alpha=0.5 * (a + b),
        )

    def _merge(self, crossings):
        groups = []
        for crossing in crossings:
            if groups and crossing.alpha - groups[-1][-1].alpha <= MERGE_FACTOR * self.width(crossing.alpha):
                groups[-1].append(crossing)
            else:
                groups.append([crossing])
        return groups

    def _regular_point(self, a, b):
        """A regular alpha strictly inside (a, b), trying the midpoint first; None if there is none."""
        for level in range(1, GAP_LEVELS + 1):
            parts = 2 ** level
            if (b - a) / parts < MERGE_FACTOR * self.width(b):
                return None
            for k in range(1, parts, 2):
                alpha = a + (b - a) * k / parts
                if self.is_regular(alpha):
                    return alpha
        return None

    def _bracket(self, groups):
        lo, hi = self.family.domain
        while groups:
            centres = [float(np.mean([c.alpha for c in group])) for group in groups]
            edges = [lo] + centres + [hi]
            gaps = []
            for k in range(len(edges) - 1):
                point = self._regular_point(edges[k], edges[k + 1])
                if point is None:
                    break
                gaps.append(point)
            else:
                return [
                    CriticalPoint(alpha, tuple(group), (gaps[k], gaps[k + 1]))
                    for k, (alpha, group) in enumerate(zip(centres, groups))
                ]
            k = len(gaps)
            if 0 < k < len(groups) and centres[k] - centres[k - 1] <= self.grid_step:
                # two crossings inside one grid cell with no regular point between them
                logger.warning(
                    "critical points %r and %r cannot be separated; merging them",
                    centres[k - 1], centres[k],
                )
                groups[k - 1:k + 1] = [groups[k - 1] + groups[k]]
                continue
            if k == 0 or k == len(groups):
                raise DegeneracyError(
                    f"critical point at {centres[k - 1 if k else 0]!r} has no regular neighbourhood "
                    f"inside the domain [{lo}, {hi}]",
                )
            raise NonIsolatedCriticalityError(
                f"no regular alpha found between critical points {centres[k - 1]!r} and {centres[k]!r}",
            )
        return []


def find_critical_points(family, grid_step=None, tol=None, table=None, guard=None, spectral_tol=None):
    """Isolated critical points of ``family`` in increasing alpha, each with a regular bracket."""
    points = CriticalPointSearch(family, grid_step, tol, table, guard, spectral_tol).run()
    logger.info("found %d critical point(s) on [%s, %s]", len(points), *family.domain)
    return points
