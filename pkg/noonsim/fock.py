"""Fock-space amplitudes of the displaced two-mode squeezed vacuum.

The source state is D(alpha0, beta0) S(r, phi)|0,0>. Disentangling the two
mode squeeze operator and moving the displacements through it gives

    D S|0> = K * exp(lam a+b+ + u a+ + v b+)|0>

with lam = -exp(i phi) tanh r, u = alpha0 - lam conj(beta0) and
v = beta0 - lam conj(alpha0). The N-photon slice is then a finite sum in
lam, u and v, which stays well conditioned at high gain because K (and a
common power of the scale of lam, u, v) is carried separately in log form.
"""
import cmath
import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import DegenerateInputError, DomainError
from .utils import check_count, check_finite

import logging
log = logging.getLogger(__name__)


NORMALIZATION_TOLERANCE = 1e-12


@functools.lru_cache(maxsize=None)
def log_factorial(n):
    """Returns ln(n!) through the log-gamma function.
    """
    return float(gammaln(n + 1))


def log_cosh(r):
    """ln cosh r for r >= 0, finite for any finite r.
    """
    return r + math.log1p(math.exp(-2.0 * r)) - math.log(2.0)


def sinh_squared(r):
    try:
        return math.sinh(r) ** 2
    except OverflowError:
        raise DomainError('sinh^2 r overflows at r=%r' % r)


class Regime(enum.Enum):
    """How the pair amplitude ratio gamma relates |alpha|^2 to the gain r.
    """
    WEAK = 'weak'      # gamma = |alpha|^2 / r
    STRONG = 'strong'  # gamma = |alpha|^2 / sinh^2 r

    def pair_scale(self, r):
        if self is Regime.WEAK:
            return float(r)
        return sinh_squared(r)

    def alpha_mag_of(self, gamma, r):
        """Returns |alpha| for a pair amplitude ratio at gain r.
        """
        if gamma < 0 or r < 0:
            raise DomainError('gamma and r must be >= 0 (gamma=%r, r=%r)'
                              % (gamma, r))
        return math.sqrt(gamma * self.pair_scale(r))

    def gamma_of(self, alpha_mag, r):
        """Returns the pair amplitude ratio for |alpha| at gain r.
        """
        if alpha_mag < 0 or r < 0:
            raise DomainError('alpha_mag and r must be >= 0 (alpha_mag=%r, '
                              'r=%r)' % (alpha_mag, r))
        scale = self.pair_scale(r)
        if scale == 0:
            if alpha_mag == 0:
                return 0.0
            raise DomainError('gamma is undefined at r=0 with a nonzero '
                              'coherent amplitude')
        return alpha_mag ** 2 / scale


@dataclass(frozen=True)
class PairAmplitudeRatio:
    gamma: float
    regime: Regime = Regime.WEAK

    def __post_init__(self):
        check_finite('gamma', self.gamma)
        if self.gamma < 0:
            raise DomainError('gamma must be >= 0, got %r' % self.gamma)
        object.__setattr__(self, 'regime', Regime(self.regime))

    def alpha_mag(self, r):
        return self.regime.alpha_mag_of(self.gamma, r)

    @classmethod
    def from_alpha_mag(cls, alpha_mag, r, regime=Regime.WEAK):
        regime = Regime(regime)
        return cls(regime.gamma_of(alpha_mag, r), regime)


@dataclass(frozen=True)
class SourceParams:
    """Physical description of the stimulated down-conversion source.

    :param r: squeeze gain, >= 0
    :param phi: phase of the down-converted pairs (radians)
    :param alpha0: coherent seed amplitude of mode a
    :param beta0: coherent seed amplitude of mode b
    """
    r: float
    phi: float = 0.0
    alpha0: complex = 0j
    beta0: complex = 0j

    def __post_init__(self):
        for name in ('r', 'phi'):
            value = getattr(self, name)
            check_finite(name, value)
            object.__setattr__(self, name, float(value))
        for name in ('alpha0', 'beta0'):
            value = getattr(self, name)
            check_finite(name, value)
            object.__setattr__(self, name, complex(value))
        if self.r < 0:
            raise DomainError('r must be >= 0, got %r' % self.r)

    @property
    def alpha_mag(self):
        return abs(self.alpha0)

    @property
    def theta(self):
        return cmath.phase(self.alpha0)

    @property
    def is_vacuum(self):
        return self.r == 0 and self.alpha0 == 0 and self.beta0 == 0

    @classmethod
    def symmetric(cls, r, alpha_mag, theta=0.0):
        """Seeds both modes with |alpha| e^{i theta} and sets phi = 0.
        """
        check_finite('alpha_mag', alpha_mag)
        check_finite('theta', theta)
        if alpha_mag < 0:
            raise DomainError('alpha_mag must be >= 0, got %r' % alpha_mag)
        alpha = cmath.rect(alpha_mag, theta)
        return cls(r=r, phi=0.0, alpha0=alpha, beta0=alpha)

    @classmethod
    def from_gamma(cls, r, gamma, regime=Regime.WEAK, theta=0.0, phi=0.0,
                   beta0=None):
        """Builds the source from a pair amplitude ratio. beta0 defaults to
        alpha0.
        """
        check_finite('r', r)
        check_finite('gamma', gamma)
        check_finite('theta', theta)
        alpha = cmath.rect(Regime(regime).alpha_mag_of(gamma, r), theta)
        return cls(r=r, phi=phi, alpha0=alpha,
                   beta0=alpha if beta0 is None else beta0)


@dataclass(frozen=True, eq=False)
class PhotonComponent:
    """The N-photon slice sum_m c_m |m, N-m> of a two-mode state.

    Amplitudes may be relative: the absolute amplitudes are
    ``exp(log_scale) * amplitudes``. ``weight`` is the squared norm the
    component carried before any normalization, in the same units as
    the amplitudes it was built from.
    """
    n_total: int
    amplitudes: np.ndarray
    normalized: bool = False
    weight: float = None
    log_scale: complex = 0j
    squared_norm: float = field(init=False)

    def __post_init__(self):
        n_total = check_count('n_total', self.n_total)
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.shape != (n_total + 1,):
            raise DomainError('expected %d amplitudes for N=%d, got shape %s'
                              % (n_total + 1, n_total, amplitudes.shape))
        if not np.all(np.isfinite(amplitudes)):
            raise DomainError('amplitudes must be finite')
        amplitudes.setflags(write=False)

        squared_norm = float(np.vdot(amplitudes, amplitudes).real)
        if self.normalized and \
                abs(squared_norm - 1.0) >= NORMALIZATION_TOLERANCE:
            raise DomainError('component flagged normalized has squared norm '
                              '%r' % squared_norm)
        weight = squared_norm if self.weight is None else float(self.weight)
        object.__setattr__(self, 'n_total', n_total)
        object.__setattr__(self, 'amplitudes', amplitudes)
        object.__setattr__(self, 'weight', weight)
        object.__setattr__(self, 'log_scale', complex(self.log_scale))
        object.__setattr__(self, 'squared_norm', squared_norm)

    @classmethod
    def fock(cls, upper, lower):
        """Returns the basis state |upper, lower>.
        """
        upper = check_count('upper', upper)
        lower = check_count('lower', lower)
        amplitudes = np.zeros(upper + lower + 1, dtype=complex)
        amplitudes[upper] = 1.0
        return cls(upper + lower, amplitudes, normalized=True)

    def normalize(self):
        if self.normalized:
            return self
        if self.squared_norm == 0:
            raise DegenerateInputError('cannot normalize the zero-weight '
                                       'N=%d component' % self.n_total)
        norm = math.sqrt(self.squared_norm)
        return PhotonComponent(
            self.n_total, self.amplitudes / norm, normalized=True,
            weight=self.weight, log_scale=self.log_scale + math.log(norm))

    @property
    def log_probability(self):
        """ln of the absolute probability of finding N photons.
        """
        if self.squared_norm == 0:
            return -math.inf
        return 2.0 * self.log_scale.real + math.log(self.squared_norm)

    @property
    def probability(self):
        return math.exp(self.log_probability)

    def __repr__(self):
        return '<%s N=%d normalized=%s weight=%.6g>' % (
            self.__class__.__name__, self.n_total, self.normalized,
            self.weight)


def tmsv_coefficient(r, phi, m, n):
    """Returns C(m, n) of the spontaneous (unseeded) two-mode squeezed
    vacuum, delta_mn (-e^{i phi} tanh r)^n / cosh r.
    """
    check_finite('r', r)
    check_finite('phi', phi)
    m = check_count('m', m)
    n = check_count('n', n)
    if r < 0:
        raise DomainError('r must be >= 0, got %r' % r)
    if m != n:
        return 0j
    pair = -cmath.exp(1j * phi) * math.tanh(r)
    return pair ** n * math.exp(-log_cosh(r))


def effective_amplitudes(src):
    """Returns (lam, u, v): the pair amplitude and the displaced seed
    amplitudes of the disentangled source state.
    """
    lam = -cmath.exp(1j * src.phi) * math.tanh(src.r)
    u = src.alpha0 - lam * src.beta0.conjugate()
    v = src.beta0 - lam * src.alpha0.conjugate()
    return lam, u, v


def displaced_tmsv_component(src, n_total):
    """Returns the N-photon component of D(alpha0, beta0) S(r, phi)|0>.

    The amplitudes are relative: every m-independent factor is moved into
    ``log_scale`` so that r=4.5 with |alpha|^2 ~ 1e5 evaluates without
    overflow. The result is not normalized.
    """
    if not isinstance(src, SourceParams):
        raise DomainError('expected SourceParams, got %r' % (src,))
    n_total = check_count('n_total', n_total)
    lam, u, v = effective_amplitudes(src)

    scale = max(abs(u), abs(v), math.sqrt(abs(lam)))
    if scale == 0:
        scale = 1.0
    lam_s, u_s, v_s = lam / scale ** 2, u / scale, v / scale

    amplitudes = np.empty(n_total + 1, dtype=complex)
    for m in range(n_total + 1):
        n = n_total - m
        half = 0.5 * (log_factorial(m) + log_factorial(n))
        total = 0j
        for k in range(min(m, n) + 1):
            log_ratio = half - log_factorial(k) - log_factorial(m - k) \
                - log_factorial(n - k)
            total += lam_s ** k * u_s ** (m - k) * v_s ** (n - k) \
                * math.exp(log_ratio)
        amplitudes[m] = total

    log_scale = (-log_cosh(src.r)
                 - 0.5 * (abs(src.alpha0) ** 2 + abs(src.beta0) ** 2)
                 + lam * src.alpha0.conjugate() * src.beta0.conjugate()
                 + n_total * math.log(scale))
    return PhotonComponent(n_total, amplitudes, normalized=False,
                           log_scale=log_scale)
