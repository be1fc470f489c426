"""Fidelity sweeps over the coherent phase, (gamma, theta) optimization and
photon flux accounting.

Everything here is deterministic: grids are fixed by the settings and
ties are broken towards the smallest theta, then the smallest gamma.
"""
import math
from dataclasses import dataclass, replace

import numpy as np

from .beamsplitter import DEFAULT_CONVENTION, BeamSplitterConvention, \
    noon_fidelity
from .errors import DomainError
from .fock import Regime, SourceParams, displaced_tmsv_component, \
    sinh_squared
from .utils import check_count, check_finite, open_config, uniform_phase_grid

import logging
log = logging.getLogger(__name__)


TWO_PI = 2.0 * math.pi
CONFIG_SECTION = 'optimize'
PEAK_WINDOW = 4.0  # peak widths searched on each side of a critical phase
PEAK_POINTS = 4    # first-round thetas per refine_points at a critical phase


@dataclass(frozen=True)
class OptimizerSettings:
    """Grid sizes of the nested grid refinement.

    :param theta_points: coarse theta grid size over [0, 2pi)
    :param gamma_points: coarse gamma grid size over the bounds
    :param refine_rounds: maximum number of refinement rounds
    :param refine_points: points per axis in every refinement round
    :param tolerance: stop once a round improves the fidelity by less
    """
    theta_points: int = 64
    gamma_points: int = 64
    refine_rounds: int = 4
    refine_points: int = 16
    tolerance: float = 1e-6

    def __post_init__(self):
        for name in ('theta_points', 'gamma_points', 'refine_rounds',
                     'refine_points'):
            check_count(name, getattr(self, name))
        if self.theta_points < 1 or self.gamma_points < 1:
            raise DomainError('coarse grids need at least one point')
        if self.refine_points < 3:
            raise DomainError('refinement needs at least 3 points per axis')
        check_finite('tolerance', self.tolerance)
        if self.tolerance < 0:
            raise DomainError('tolerance must be >= 0')

    @classmethod
    def from_config(cls, filepath):
        """Reads the ``[optimize]`` section of an INI file; missing keys keep
        their defaults.
        """
        config = open_config(filepath)
        defaults = cls()
        get = config.getint
        return cls(
            theta_points=get(CONFIG_SECTION, 'theta_points',
                             fallback=defaults.theta_points),
            gamma_points=get(CONFIG_SECTION, 'gamma_points',
                             fallback=defaults.gamma_points),
            refine_rounds=get(CONFIG_SECTION, 'refine_rounds',
                              fallback=defaults.refine_rounds),
            refine_points=get(CONFIG_SECTION, 'refine_points',
                              fallback=defaults.refine_points),
            tolerance=config.getfloat(CONFIG_SECTION, 'tolerance',
                                      fallback=defaults.tolerance))

    def updated(self, **overrides):
        """Returns a copy with every non-None override applied.
        """
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class SweepSpec:
    """A family of fidelity-vs-theta curves at fixed gain and N.
    """
    r: float
    n_total: int
    regime: Regime = Regime.WEAK
    theta_grid: np.ndarray = None
    gamma_values: tuple = (0.0,)
    phi: float = 0.0
    convention: BeamSplitterConvention = DEFAULT_CONVENTION

    def __post_init__(self):
        check_finite('r', self.r)
        check_finite('phi', self.phi)
        if self.r < 0:
            raise DomainError('r must be >= 0, got %r' % self.r)
        if check_count('n_total', self.n_total) < 1:
            raise DomainError('fidelity sweeps need N >= 1')
        thetas = uniform_phase_grid(256) if self.theta_grid is None \
            else np.array(self.theta_grid, dtype=float).ravel()
        if thetas.size == 0 or not np.all(np.isfinite(thetas)):
            raise DomainError('theta grid must be non-empty and finite')
        gammas = tuple(float(g) for g in self.gamma_values)
        if not gammas:
            raise DomainError('at least one gamma value is required')
        for gamma in gammas:
            check_finite('gamma', gamma)
            if gamma < 0:
                raise DomainError('gamma must be >= 0, got %r' % gamma)
        thetas.setflags(write=False)
        object.__setattr__(self, 'theta_grid', thetas)
        object.__setattr__(self, 'gamma_values', gammas)
        object.__setattr__(self, 'regime', Regime(self.regime))
        object.__setattr__(self, 'convention',
                           BeamSplitterConvention(self.convention))

    @classmethod
    def uniform(cls, r, n_total, regime=Regime.WEAK, gamma_values=(0.0,),
                theta_points=256, phi=0.0, convention=DEFAULT_CONVENTION):
        return cls(r=r, n_total=n_total, regime=regime,
                   theta_grid=uniform_phase_grid(theta_points),
                   gamma_values=tuple(gamma_values), phi=phi,
                   convention=convention)

    def fidelity(self, gamma, theta):
        """Phase-optimized NOON fidelity of the source at (gamma, theta).
        """
        src = SourceParams.from_gamma(self.r, gamma, self.regime, theta,
                                      self.phi)
        component = displaced_tmsv_component(src, self.n_total)
        return noon_fidelity(component, self.convention).fidelity

    def peak_width(self, gamma):
        """Theta scale 1/(|alpha| (1 + tanh r)) of the fidelity peaks next
        to the critical phases; infinite without a seed.
        """
        alpha_mag = self.regime.alpha_mag_of(gamma, self.r)
        if alpha_mag == 0:
            return math.inf
        return 1.0 / (alpha_mag * (1.0 + math.tanh(self.r)))


def fidelity_vs_theta(spec, gamma):
    """Returns [(theta, fidelity)] over the sweep's theta grid.
    """
    return [(float(theta), spec.fidelity(gamma, theta))
            for theta in spec.theta_grid]


def curve_maximum(curve):
    """Returns the (theta, fidelity) point of largest fidelity, smallest
    theta on ties.
    """
    if not curve:
        raise DomainError('empty curve')
    return min(curve, key=lambda point: (-point[1], point[0]))


@dataclass(frozen=True)
class Optimum:
    gamma_star: float
    theta_star: float
    fidelity_star: float
    curve: tuple
    coarse_fidelity: float
    rounds: int
    evaluations: int


def _fidelity_grid(spec, gammas, thetas):
    return np.array([[spec.fidelity(gamma, theta) for theta in thetas]
                     for gamma in gammas])


def _grid_argmax(grid, gammas, thetas):
    best = grid.max()
    rows, cols = np.nonzero(grid == best)
    theta, gamma = min((float(thetas[j]), float(gammas[i]))
                       for i, j in zip(rows, cols))
    return float(best), gamma, theta


def _check_bounds(gamma_bounds):
    try:
        low, high = (float(g) for g in gamma_bounds)
    except (TypeError, ValueError):
        raise DomainError('gamma bounds must be a (low, high) pair, got %r'
                          % (gamma_bounds,))
    check_finite('gamma lower bound', low)
    check_finite('gamma upper bound', high)
    if low < 0 or high < low:
        raise DomainError('empty or negative gamma bounds [%r, %r]'
                          % (low, high))
    return low, high


def _axis(low, high, points):
    if high <= low:
        return np.array([low])
    return np.linspace(low, high, points)


def _shrink(spec, incumbent, gamma_step, theta_step, gamma_bounds, settings,
            theta_points=None):
    """Rounds of local (gamma, theta) grids that shrink around the
    incumbent (fidelity, gamma, theta) until a round gains less than
    ``settings.tolerance``. The first round uses ``theta_points`` thetas.

    Returns (incumbent, rounds, evaluations).
    """
    best, gamma_star, theta_star = incumbent
    low, high = gamma_bounds
    points = theta_points or settings.refine_points
    rounds = evaluations = 0
    for rounds in range(1, settings.refine_rounds + 1):
        gammas = _axis(max(low, gamma_star - gamma_step),
                       min(high, gamma_star + gamma_step),
                       settings.refine_points)
        thetas = np.mod(theta_star + np.linspace(-theta_step, theta_step,
                                                 points),
                        TWO_PI)
        grid = _fidelity_grid(spec, gammas, thetas)
        evaluations += grid.size
        candidate, gamma, theta = _grid_argmax(grid, gammas, thetas)
        improvement = candidate - best
        if improvement > 0:
            best, gamma_star, theta_star = candidate, gamma, theta
        log.debug('round %d: F=%.12f at gamma=%.6g theta=%.6g (+%.3g)',
                  rounds, best, gamma_star, theta_star, max(improvement, 0))
        gamma_step *= 2.0 / (settings.refine_points - 1)
        theta_step *= 2.0 / (points - 1)
        points = settings.refine_points
        if improvement < settings.tolerance:
            break
    return (best, gamma_star, theta_star), rounds, evaluations


def critical_phases(phi=0.0):
    """Coherent phases theta in [0, 2 pi) where the displaced seed
    amplitude |u| = |alpha0 - lam conj(beta0)| is smallest for
    alpha0 == beta0, i.e. 2 theta - phi = pi (mod 2 pi).
    """
    first = ((phi + math.pi) / 2.0) % math.pi
    return (first, first + math.pi)


def refine_theta(spec, gamma, theta, step, settings=None, points=None):
    """Shrinking theta grids of half width ``step`` around theta at fixed
    gamma. Returns (theta, fidelity, evaluations).
    """
    settings = settings or OptimizerSettings()
    incumbent = (spec.fidelity(gamma, theta), float(gamma), float(theta))
    (best, _, theta), _, evaluations = _shrink(
        spec, incumbent, 0.0, step, (gamma, gamma), settings, points)
    return theta, best, evaluations + 1


def curve_peak(spec, gamma, curve, settings=None):
    """Returns the refined (theta, fidelity) maximum of a curve from
    `fidelity_vs_theta`.

    The grid maximum is refined locally. When the peaks next to the
    critical phases are narrower than the grid spacing, those phases are
    refined as well; at r=4.5 they are about 1e-3 rad wide.
    """
    settings = settings or OptimizerSettings()
    step = TWO_PI / spec.theta_grid.size
    theta, best = curve_maximum(curve)
    candidates = [(theta, best),
                  refine_theta(spec, gamma, theta, step, settings)[:2]]
    width = PEAK_WINDOW * spec.peak_width(gamma)
    if width < step:
        candidates.extend(
            refine_theta(spec, gamma, phase, width, settings,
                         PEAK_POINTS * settings.refine_points)[:2]
            for phase in critical_phases(spec.phi))
    return curve_maximum(candidates)


def optimize_gamma_theta(r, n_total, regime=Regime.WEAK,
                         gamma_bounds=(0.1, 10.0), settings=None, phi=0.0,
                         conv=DEFAULT_CONVENTION):
    """Maximizes the NOON fidelity over (gamma, theta) at fixed r and N.

    A coarse gamma x theta grid, with the critical phases of every coarse
    gamma refined where their peaks are narrower than the grid, is followed
    by rounds of local grids that shrink around the incumbent until a round
    gains less than ``settings.tolerance``.
    """
    settings = settings or OptimizerSettings()
    low, high = _check_bounds(gamma_bounds)
    spec = SweepSpec.uniform(r, n_total, regime, (low,),
                             settings.theta_points, phi, conv)

    thetas = spec.theta_grid
    gammas = _axis(low, high, settings.gamma_points)
    grid = _fidelity_grid(spec, gammas, thetas)
    evaluations = grid.size
    best, gamma_star, theta_star = _grid_argmax(grid, gammas, thetas)
    gamma_step = (high - low) / max(gammas.size - 1, 1)
    theta_step = TWO_PI / settings.theta_points
    for gamma in gammas:
        width = PEAK_WINDOW * spec.peak_width(gamma)
        if width >= theta_step:
            continue
        for phase in critical_phases(phi):
            theta, fidelity, count = refine_theta(
                spec, gamma, phase, width, settings,
                PEAK_POINTS * settings.refine_points)
            evaluations += count
            if fidelity > best:
                best, gamma_star, theta_star = fidelity, float(gamma), theta
    coarse = best
    log.debug('coarse optimum F=%.12f at gamma=%.6g theta=%.6g',
              best, gamma_star, theta_star)

    theta_step = min(theta_step,
                     PEAK_WINDOW * spec.peak_width(gamma_star))
    (best, gamma_star, theta_star), rounds, count = _shrink(
        spec, (best, gamma_star, theta_star), gamma_step, theta_step,
        (low, high), settings)
    evaluations += count

    curve = {theta: fidelity
             for theta, fidelity in fidelity_vs_theta(spec, gamma_star)}
    evaluations += len(curve)
    curve[theta_star] = best
    theta_star, best = curve_maximum(list(curve.items()))
    return Optimum(gamma_star=gamma_star, theta_star=theta_star,
                   fidelity_star=best, curve=tuple(sorted(curve.items())),
                   coarse_fidelity=coarse, rounds=rounds,
                   evaluations=evaluations)


@dataclass(frozen=True)
class FluxReport:
    """Mean photon and pair numbers of the source.
    """
    mean_pdc_pairs: float
    mean_photons_per_mode: float
    coherent_pair_flux: float
    gamma: float
    regime: Regime

    @property
    def coherent_photons_per_mode(self):
        return math.sqrt(self.coherent_pair_flux)


def flux_report(r, gamma, regime=Regime.WEAK):
    """Returns the pair flux of the down conversion (sinh^4 r) next to the
    coherent pair flux |alpha|^4 for the given pair amplitude ratio.
    """
    check_finite('r', r)
    check_finite('gamma', gamma)
    regime = Regime(regime)
    pdc_photons = sinh_squared(r)
    try:
        alpha_sq = regime.alpha_mag_of(gamma, r) ** 2
        return FluxReport(mean_pdc_pairs=pdc_photons ** 2,
                          mean_photons_per_mode=pdc_photons + alpha_sq,
                          coherent_pair_flux=alpha_sq ** 2,
                          gamma=float(gamma), regime=regime)
    except OverflowError:
        raise DomainError('flux overflows at r=%r, gamma=%r' % (r, gamma))
