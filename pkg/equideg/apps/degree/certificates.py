"""
Existence certificates for non-radial solutions.

A nonzero coefficient of (H_m0) in the degree of the linearization at the
origin forces a non-trivial solution whose isotropy contains (H_m0). Every
m0 where the coefficient can be nonzero is examined: the modes up to
max_mode(max mu) and every gcd of a subset of S.
"""
import logging
from dataclasses import dataclass, field

from equideg.apps.bessel.zeros import default_table
from equideg.apps.burnside.ring import gcd_closure
from equideg.apps.spectral.spectrum import as_spectrum
from equideg.exceptions import InternalConsistencyError

from .profile import annulus_coeff, build_profile, degree_coeff, degree_element, mode_parity

logger = logging.getLogger(__name__)

ORBIT_TYPE = 'D_{2m}^{D_m}x^{Z1}Z2'

EXISTENCE_HYPOTHESES = ('A1', 'A2', 'A3', 'A4')
BIFURCATION_HYPOTHESES = EXISTENCE_HYPOTHESES + ('B~',)


@dataclass(frozen=True)
class Certificate:
    kind: str
    m0: int
    guarantee: str
    provenance: str
    conditional_on: tuple
    coeff: int = None
    annulus_coeff: int = None
    alpha: float = None
    interval: tuple = None
    unbounded: bool = False
    non_radial: bool = True

    def as_dict(self):
        data = {
            'kind': self.kind,
            'm0': self.m0,
            'orbit_type': ORBIT_TYPE,
            'guarantee': self.guarantee,
            'provenance': self.provenance,
            'conditional_on': list(self.conditional_on),
        }
        if self.coeff is not None:
            data['coeff'] = self.coeff
        if self.annulus_coeff is not None:
            data['annulus_coeff'] = self.annulus_coeff
        if self.alpha is not None:
            data['alpha'] = self.alpha
        if self.interval is not None:
            data['interval'] = list(self.interval)
        if self.kind == 'unbounded_branch':
            data['unbounded'] = self.unbounded
        data['non_radial'] = self.non_radial
        return data


def candidate_modes(profile, table):
    """Modes m0 >= 1 where the (H_m0) coefficient is examined, in increasing order."""
    top = profile.spectrum.max_mu if profile.spectrum is not None else None
    highest = table.max_mode(top) if top is not None and top > 0 else None
    modes = set(range(1, highest + 1)) if highest else set()
    modes.update(gcd_closure(profile.s_set))
    return sorted(modes)


def existence_certificates(spectrum, table=None, guard=None, profile=None):
    table = default_table() if table is None else table
    profile = build_profile(spectrum, table, guard) if profile is None else profile
    certificates = []
    for m0 in candidate_modes(profile, table):
        value = degree_coeff(profile, m0)
        if value:
            certificates.append(Certificate(
                kind='existence',
                m0=m0,
                coeff=value,
                annulus_coeff=annulus_coeff(profile, m0),
                guarantee=f'non-trivial solution with (G_u) >= (H_{m0})',
                provenance='nonzero (H_m0) coefficient of the degree at the origin',
                conditional_on=EXISTENCE_HYPOTHESES + ('D',),
            ))
    return certificates


@dataclass(frozen=True)
class ExistenceReport:
    profile: object
    certificates: tuple
    degree: object
    assumptions_asserted: tuple = field(default=())

    @property
    def radial_indicator(self):
        return self.profile.radial_indicator

    def as_dict(self):
        profile = self.profile.as_dict()
        return {
            'spectrum': [entry.as_dict() for entry in self.profile.spectrum],
            'sigma0': profile['sigma0'],
            'counts': profile['counts'],
            'S': profile['S'],
            'n0': profile['n0'],
            'complex_pairs': profile['complex_pairs'],
            'degree': self.degree.to_dict(),
            'certificates': [c.as_dict() for c in self.certificates],
            'radial_indicator': self.radial_indicator,
            'assumptions_asserted': list(self.assumptions_asserted),
        }


def existence_report(spectrum, table=None, guard=None, assumptions=()):
    """
    Profile, degree, certificates and the radial indicator for one spectrum.

    The S membership of every examined mode is recomputed from the eigenvalue
    counts directly; a mismatch raises InternalConsistencyError.
    """
    table = default_table() if table is None else table
    spectrum = as_spectrum(spectrum)
    profile = build_profile(spectrum, table, guard)
    for m in candidate_modes(profile, table):
        direct = mode_parity(profile.spectrum, table, m, guard) % 2 == 1
        if direct != (m in profile.s_set):
            raise InternalConsistencyError(
                f"mode {m}: eigenvalue parity says {direct}, the index set says {m in profile.s_set}",
                mode=m,
            )
    certificates = existence_certificates(spectrum, table, guard, profile=profile)
    logger.info("existence: S=%s, %d certificate(s)", list(profile.s_set), len(certificates))
    return ExistenceReport(
        profile=profile,
        certificates=tuple(certificates),
        degree=degree_element(profile),
        assumptions_asserted=tuple(assumptions),
    )
