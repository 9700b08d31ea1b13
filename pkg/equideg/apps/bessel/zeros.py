"""
Bessel functions of the first kind and the Dirichlet spectrum of the unit disc.

The Dirichlet Laplacian on the unit disc has eigenvalues s_{m,n} = j_{m,n}^2,
where j_{m,n} is the n-th positive zero of J_m. Zeros are located by a forward
sign-change scan started past the previous zero (consecutive zeros of J_m are
more than 2.9 apart, so a 0.25 step can never step over two of them) and then
refined by bisection, which keeps every stored zero inside a verified bracket.
"""
import json
import logging
import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from django.conf import settings
from scipy import optimize, special

from equideg.exceptions import CapacityError, DomainError

logger = logging.getLogger(__name__)

SCAN_STEP = 0.25
SCAN_CHUNK = 64
# offset past the previous zero where the next scan starts
RESTART_OFFSET = 1.0


def _option(name, value):
    return settings.EQUIDEG[name] if value is None else value


def _finite(value, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _check_mode(m, mode_cap):
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"mode must be a nonnegative integer, got {m!r}")
    if m > mode_cap:
        raise CapacityError(f"mode {m} exceeds the mode cap {mode_cap}", mode=int(m), cap=mode_cap)
    return int(m)


def eval_bessel_j(m, x, mode_cap=None):
    """Return J_m(x) for a nonnegative integer order and nonnegative argument."""
    m = _check_mode(m, _option('MODE_CAP', mode_cap))
    x = _finite(x, 'x')
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x!r}")
    return float(special.jv(m, x))


@dataclass(frozen=True)
class BesselZero:
    m: int
    n: int
    zero: float
    eigenvalue: float

    def as_dict(self):
        return {'m': self.m, 'n': self.n, 'zero': self.zero, 'eigenvalue': self.eigenvalue}


class BesselZeroTable:
    """
    Memoized map (m, n) -> (j_{m,n}, s_{m,n}).

    Per-mode zeros are stored as immutable tuples and replaced wholesale under
    a lock, so concurrent readers only ever see complete prefixes.
    """

    def __init__(self, tolerance=None, mode_cap=None, index_cap=None):
        self.tolerance = float(_option('BESSEL_TOLERANCE', tolerance))
        self.mode_cap = int(_option('MODE_CAP', mode_cap))
        self.index_cap = int(_option('INDEX_CAP', index_cap))
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")
        self._zeros = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"<BesselZeroTable modes={len(self._zeros)} entries={len(self)} tol={self.tolerance:g}>"

    def __len__(self):
        return sum(len(zeros) for zeros in self._zeros.values())

    # -- lookups ---------------------------------------------------------

    def zero(self, m, n):
        """Return j_{m,n}, the n-th positive zero of J_m."""
        m = _check_mode(m, self.mode_cap)
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
            raise DomainError(f"index must be a positive integer, got {n!r}")
        if n > self.index_cap:
            raise CapacityError(f"index {n} exceeds the index cap {self.index_cap}", index=int(n), cap=self.index_cap)
        zeros = self._zeros.get(m, ())
        if n > len(zeros):
            zeros = self._extend(m, int(n))
        return zeros[n - 1]

    def laplacian_eigenvalue(self, m, n):
        """Return s_{m,n} = j_{m,n}^2."""
        return self.zero(m, n) ** 2

    def zeros_below(self, m, bound):
        """Return [(n, s_{m,n})] for every n with s_{m,n} < bound, in increasing n."""
        m = _check_mode(m, self.mode_cap)
        bound = _finite(bound, 'bound')
        # j_{m,1} > m, so nothing lies below m^2
        if bound <= 0 or bound <= m * m:
            return []
        found = []
        n = 1
        while True:
            if n > self.index_cap:
                raise CapacityError(
                    f"more than {self.index_cap} zeros of J_{m} lie below {bound}",
                    mode=m, bound=bound, cap=self.index_cap,
                )
            s = self.laplacian_eigenvalue(m, n)
            if s >= bound:
                return found
            found.append((n, s))
            n += 1

    def max_mode(self, bound):
        """Return the largest m with s_{m,1} < bound, or None when s_{0,1} >= bound."""
        bound = _finite(bound, 'bound')
        if bound <= self.laplacian_eigenvalue(0, 1):
            return None
        m = 0
        while True:
            nxt = m + 1
            if nxt * nxt >= bound:
                return m
            if nxt > self.mode_cap:
                raise CapacityError(
                    f"modes above the cap {self.mode_cap} have eigenvalues below {bound}",
                    bound=bound, cap=self.mode_cap,
                )
            if self.laplacian_eigenvalue(nxt, 1) >= bound:
                return m
            m = nxt

    def eigenvalues_below(self, bound):
        """Return [(m, n, s_{m,n})] for every Dirichlet eigenvalue below bound, sorted by (m, n)."""
        top = self.max_mode(bound)
        if top is None:
            return []
        return [(m, n, s) for m in range(top + 1) for n, s in self.zeros_below(m, bound)]

    def build(self, bound):
        """Fill the table with every (m, n) such that s_{m,n} < bound."""
        self.eigenvalues_below(bound)
        return self

    def entries(self):
        return [
            BesselZero(m, n, z, z * z)
            for m in sorted(self._zeros)
            for n, z in enumerate(self._zeros[m], start=1)
        ]

    # -- persistence -----------------------------------------------------

    def dump(self):
        return json.dumps([entry.as_dict() for entry in self.entries()], indent=2)

    @classmethod
    def load(cls, text, **options):
        """Rebuild a table from :meth:`dump` output, re-verifying every bracket."""
        try:
            records = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"zero table is not valid JSON: {exc}") from None
        table = cls(**options)
        if not isinstance(records, list):
            raise DomainError("zero table must be a JSON list of records")
        entries = []
        for record in records:
            try:
                entries.append((int(record['m']), int(record['n']), float(record['zero'])))
            except (KeyError, TypeError, ValueError):
                raise DomainError(f"zero table record {record!r} needs integer m, n and a numeric zero") from None
            if not math.isfinite(entries[-1][2]):
                raise DomainError(f"zero table record {record!r} has a non-finite zero")
        per_mode = {}
        for m, n, zero in sorted(entries):
            per_mode.setdefault(m, []).append((n, zero))
        # loaded values cannot be trusted to the bisection width; the check is
        # a sign change at a width float evaluation can resolve
        width = max(table.tolerance, 1e-9)
        for m, items in per_mode.items():
            _check_mode(m, table.mode_cap)
            if [n for n, _ in items] != list(range(1, len(items) + 1)):
                raise DomainError(f"zero table mode {m} is not a contiguous run n = 1, 2, ...")
            zeros = tuple(z for _, z in items)
            if any(b <= a for a, b in zip(zeros, zeros[1:])):
                raise DomainError(f"zero table mode {m} is not strictly increasing")
            for n, z in items:
                if special.jv(m, z - width) * special.jv(m, z + width) > 0:
                    raise DomainError(f"stored zero j_{{{m},{n}}} = {z!r} does not bracket a sign change")
            table._zeros[m] = zeros
        return table

    # -- root finding ----------------------------------------------------

    def _extend(self, m, n):
        with self._lock:
            zeros = list(self._zeros.get(m, ()))
            while len(zeros) < n:
                zeros.append(self._next_zero(m, zeros[-1] if zeros else None))
            self._zeros[m] = tuple(zeros)
            logger.debug("J_%d zeros computed through n=%d (%.6f)", m, len(zeros), zeros[-1])
            return self._zeros[m]

    def _next_zero(self, m, previous):
        # J_m(m) > 0 for m >= 1, J_0(0) = 1, and j_{m,1} > m
        start = float(m) if previous is None else previous + RESTART_OFFSET
        start_sign = np.sign(special.jv(m, start))
        while True:
            grid = start + SCAN_STEP * np.arange(1, SCAN_CHUNK + 1)
            signs = np.sign(special.jv(m, grid))
            changed = np.flatnonzero(signs != start_sign)
            if changed.size:
                hi = float(grid[changed[0]])
                if signs[changed[0]] == 0:
                    return hi
                lo = hi - SCAN_STEP
                return optimize.bisect(lambda x: special.jv(m, x), lo, hi, xtol=self.tolerance)
            start = float(grid[-1])


@lru_cache(maxsize=None)
def default_table():
    """Process-wide table built from settings, preloaded from ZERO_TABLE_PATH when set."""
    path = settings.EQUIDEG['ZERO_TABLE_PATH']
    if path:
        logger.info("preloading Bessel zero table from %s", path)
        return BesselZeroTable.load(Path(path).read_text())
    return BesselZeroTable()


def _resolve(table):
    return default_table() if table is None else table


def zero(m, n, table=None):
    return _resolve(table).zero(m, n)


def laplacian_eigenvalue(m, n, table=None):
    return _resolve(table).laplacian_eigenvalue(m, n)


def zeros_below(m, bound, table=None):
    return _resolve(table).zeros_below(m, bound)


def max_mode(bound, table=None):
    return _resolve(table).max_mode(bound)


def zero_record(m, n, table=None):
    z = _resolve(table).zero(m, n)
    return BesselZero(m, n, z, z * z)


def below_report(bound, m=None, table=None):
    """Eigenvalues below ``bound`` for one mode, or for all modes when ``m`` is None."""
    table = _resolve(table)
    if m is None:
        records = [BesselZero(k, n, table.zero(k, n), s) for k, n, s in table.eigenvalues_below(bound)]
    else:
        records = [BesselZero(m, n, table.zero(m, n), s) for n, s in table.zeros_below(m, bound)]
    return {'bound': bound, 'max_mode': table.max_mode(bound), 'eigenvalues': records}
