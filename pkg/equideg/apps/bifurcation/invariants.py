"""
Local and global bifurcation invariants of a matrix family.

The local invariant at a critical point is the degree at the left end of its
bracket minus the degree at the right end, taken coefficient by coefficient.
Over the whole critical set these differences telescope to the difference
between the first left end and the last right end, which is checked exactly.

Closed-form evaluations of both invariants from the parity sets J and S are
computed next to the differences and their agreement is reported.
"""
import logging
from dataclasses import dataclass, field, replace

from equideg.apps.bessel.zeros import default_table
from equideg.apps.burnside.ring import compatible_subsets, distinct_modes, gcd_closure
from equideg.apps.degree.certificates import BIFURCATION_HYPOTHESES, Certificate
from equideg.apps.degree.profile import build_profile, degree_coeff, mode_parity
from equideg.exceptions import InternalConsistencyError

from .critical import find_critical_points

logger = logging.getLogger(__name__)


class FamilyAnalysis:
    """Shared options and a profile cache for one family."""

    def __init__(self, family, grid_step=None, tol=None, table=None, guard=None, spectral_tol=None):
        self.family = family
        self.grid_step = grid_step
        self.tol = tol
        self.table = default_table() if table is None else table
        self.guard = guard
        self.spectral_tol = spectral_tol
        self._profiles = {}

    def spectrum(self, alpha):
        return self.family.spectrum_at(alpha, self.spectral_tol)

    def profile(self, alpha):
        if alpha not in self._profiles:
            self._profiles[alpha] = build_profile(self.spectrum(alpha), self.table, self.guard)
        return self._profiles[alpha]

    def critical_points(self):
        return find_critical_points(
            self.family, self.grid_step, self.tol, self.table, self.guard, self.spectral_tol,
        )

    def examined_modes(self, *profiles):
        """Modes where a degree coefficient can be nonzero at any of ``profiles``."""
        modes = set()
        for profile in profiles:
            top = profile.spectrum.max_mu
            highest = self.table.max_mode(top) if top is not None and top > 0 else None
            if highest:
                modes.update(range(1, highest + 1))
            modes.update(gcd_closure(profile.s_set))
        return sorted(modes)


def _analysis(family, options):
    return family if isinstance(family, FamilyAnalysis) else FamilyAnalysis(family, **options)


def count_changes(before, after):
    """n^m(after) - n^m(before) for every mode present on either side."""
    modes = sorted(set(before.counts) | set(after.counts))
    return {m: after.count(m) - before.count(m) for m in modes}


def odd_modes(changes):
    return tuple(m for m, t in changes.items() if m >= 1 and t % 2)


def parity_closed_form(j_set, end_profile, m0):
    """
    -[m0 in J] (-1)^[n^m0 odd at the end]
      + 2 * sum over I in P(J), |I| >= 2, of (-2)^(|I|-2) [B(I)] [m0 = gcd I] (-1)^[I in P(S at the end)]
    """
    j_set = distinct_modes(j_set)
    total = 0
    if m0 in j_set:
        total -= -1 if end_profile.count(m0) % 2 else 1
    end_s = set(end_profile.s_set)
    for subset in compatible_subsets(j_set, m0):
        sign = -1 if set(subset) <= end_s else 1
        total += 2 * (-2) ** (len(subset) - 2) * sign
    return total


@dataclass(frozen=True)
class LocalInvariant:
    at: object
    t_counts: dict
    j_set: tuple
    coeffs: dict
    closed_form: dict
    parity_change_modes: tuple = ()

    @property
    def closed_form_agrees(self):
        return all(self.coeffs.get(m0, 0) == value for m0, value in self.closed_form.items())

    def as_dict(self):
        return {
            'alpha': self.at.alpha,
            'bracket': list(self.at.bracket),
            't_counts': {str(m): t for m, t in self.t_counts.items()},
            'J': list(self.j_set),
            'coeffs': {str(m0): c for m0, c in self.coeffs.items()},
            'closed_form': {str(m0): c for m0, c in self.closed_form.items()},
            'closed_form_agrees': self.closed_form_agrees,
            'parity_change_modes': list(self.parity_change_modes),
        }


def local_invariant(family, cp, **options):
    analysis = _analysis(family, options)
    before, after = analysis.profile(cp.bracket[0]), analysis.profile(cp.bracket[1])
    t_counts = count_changes(before, after)
    j_set = odd_modes(t_counts)
    modes = analysis.examined_modes(before, after)
    coeffs = {m0: degree_coeff(before, m0) - degree_coeff(after, m0) for m0 in modes}
    closed = {m0: parity_closed_form(j_set, after, m0) for m0 in modes}
    invariant = LocalInvariant(cp, t_counts, j_set, coeffs, closed, parity_change_modes(analysis, cp))
    if not invariant.closed_form_agrees:
        logger.warning(
            "local closed form disagrees with the degree difference at alpha=%r: %s vs %s",
            cp.alpha, closed, coeffs,
        )
    if set(invariant.parity_change_modes) != set(j_set):
        raise InternalConsistencyError(
            f"eigenvalue parities change at modes {list(invariant.parity_change_modes)} "
            f"but the count changes are odd at {list(j_set)}",
            alpha=cp.alpha,
        )
    return invariant


def parity_change_modes(family, cp, **options):
    """Modes m >= 1 where the eigenvalue parity count changes parity across the bracket."""
    analysis = _analysis(family, options)
    left, right = analysis.spectrum(cp.bracket[0]), analysis.spectrum(cp.bracket[1])
    tops = [s.max_mu for s in (left, right) if s.max_mu is not None and s.max_mu > 0]
    highest = analysis.table.max_mode(max(tops)) if tops else None
    modes = []
    for m in range(1, (highest or 0) + 1):
        a = mode_parity(left, analysis.table, m, analysis.guard)
        b = mode_parity(right, analysis.table, m, analysis.guard)
        if (a - b) % 2:
            modes.append(m)
    return tuple(modes)


def krasnoselskii_certificates(family, cp, local=None, **options):
    """Local branch certificates for every m0 with a nonzero local invariant coefficient."""
    local = local_invariant(family, cp, **options) if local is None else local
    return [
        Certificate(
            kind='local_branch',
            m0=m0,
            coeff=value,
            alpha=cp.alpha,
            interval=cp.bracket,
            guarantee=f'branch of non-trivial solutions with branching point ({cp.alpha!r}, 0) '
                      f'and symmetries at least (H_{m0})',
            provenance='nonzero local bifurcation invariant',
            conditional_on=BIFURCATION_HYPOTHESES + ('D',),
        )
        for m0, value in local.coeffs.items() if value
    ]


def sigma_k(profile):
    """Triples of sigma0 that survive the K-fixed reduction: odd mode, odd multiplicity."""
    spectrum = profile.spectrum
    return tuple(
        t for t in profile.sigma0
        if t.m % 2 and spectrum[t.j - 1].geom_mult % 2
    )


@dataclass(frozen=True)
class GlobalReport:
    domain: tuple
    critical_points: tuple
    local: tuple
    local_certificates: tuple
    t_lambda: dict
    j_lambda: tuple
    sum_coeffs: dict
    closed_form: dict
    kfixed_certificates: tuple
    sigma_k_start: tuple = ()
    sigma_k_end: tuple = ()
    assumptions_asserted: tuple = field(default=())

    @property
    def closed_form_agrees(self):
        return all(self.sum_coeffs.get(m0, 0) == value for m0, value in self.closed_form.items())

    @property
    def certificates(self):
        return self.local_certificates + self.kfixed_certificates

    def as_dict(self):
        return {
            'domain': list(self.domain),
            'critical_points': [cp.as_dict() for cp in self.critical_points],
            'local': [
                {**inv.as_dict(), 'certificates': [c.as_dict() for c in self.local_certificates if c.alpha == inv.at.alpha]}
                for inv in self.local
            ],
            'global': {
                'J_Lambda': list(self.j_lambda),
                't_Lambda': {str(m): t for m, t in self.t_lambda.items()},
                'sum_coeffs': {str(m0): c for m0, c in self.sum_coeffs.items()},
                'closed_form': {str(m0): c for m0, c in self.closed_form.items()},
                'closed_form_agrees': self.closed_form_agrees,
                'sigma_K_start': [t.as_dict() for t in self.sigma_k_start],
                'sigma_K_end': [t.as_dict() for t in self.sigma_k_end],
            },
            'unbounded_nonradial': [c.as_dict() for c in self.kfixed_certificates],
            'assumptions_asserted': list(self.assumptions_asserted),
        }


def global_report(family, assumptions=(), **options):
    analysis = _analysis(family, options)
    points = analysis.critical_points()
    local = tuple(local_invariant(analysis, cp) for cp in points)
    local_certificates = tuple(
        c for cp, inv in zip(points, local) for c in krasnoselskii_certificates(analysis, cp, inv)
    )
    if not points:
        return GlobalReport(
            analysis.family.domain, (), (), (), {}, (), {}, {}, (),
            assumptions_asserted=tuple(assumptions),
        )

    start, end = analysis.profile(points[0].bracket[0]), analysis.profile(points[-1].bracket[1])
    t_lambda = count_changes(start, end)
    j_lambda = odd_modes(t_lambda)
    modes = sorted(set(analysis.examined_modes(start, end)).union(*(inv.coeffs for inv in local)))
    sum_coeffs = {m0: degree_coeff(start, m0) - degree_coeff(end, m0) for m0 in modes}
    for m0, value in sum_coeffs.items():
        telescoped = sum(inv.coeffs.get(m0, 0) for inv in local)
        if telescoped != value:
            raise InternalConsistencyError(
                f"local invariants at m0={m0} sum to {telescoped} but the endpoint difference is {value}",
                m0=m0,
            )
    closed = {m0: parity_closed_form(j_lambda, end, m0) for m0 in modes}
    if any(sum_coeffs[m0] != value for m0, value in closed.items()):
        logger.warning("global closed form disagrees with the endpoint difference: %s vs %s", closed, sum_coeffs)

    report = GlobalReport(
        domain=analysis.family.domain,
        critical_points=tuple(points),
        local=local,
        local_certificates=local_certificates,
        t_lambda=t_lambda,
        j_lambda=j_lambda,
        sum_coeffs=sum_coeffs,
        closed_form=closed,
        kfixed_certificates=(),
        sigma_k_start=sigma_k(start),
        sigma_k_end=sigma_k(end),
        assumptions_asserted=tuple(assumptions),
    )
    return replace(report, kfixed_certificates=tuple(kfixed_unbounded_certificates(analysis, report)))


def kfixed_unbounded_certificates(family, report=None, **options):
    """
    Unbounded non-radial branches: odd m0 whose count n^m0 has different
    parity at the two ends of the critical set.
    """
    if report is None:
        report = global_report(family, **options)
        return list(report.kfixed_certificates)
    if not report.critical_points:
        return []
    interval = (report.critical_points[0].alpha, report.critical_points[-1].alpha)
    return [
        Certificate(
            kind='unbounded_branch',
            m0=m0,
            interval=interval,
            unbounded=True,
            non_radial=True,
            guarantee=f'unbounded branch of non-radial solutions with symmetries at least (H_{m0}), '
                      f'branching within [{interval[0]!r}, {interval[1]!r}]',
            provenance='odd mode with a parity change of n^m0 across the critical set',
            conditional_on=BIFURCATION_HYPOTHESES + ('D',),
        )
        for m0 in report.j_lambda if m0 % 2
    ]
