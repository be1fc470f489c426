"""Mach-Zehnder propagation (splitter, phase psi, splitter) with photon
number resolving coincidence detection at the two exit ports.

The phase is applied to the upper arm only: |m, N-m> -> e^{i m psi}|m, N-m>.
Probabilities come out in the units of the component amplitudes, i.e.
relative (prefactor free) for components built by
:func:`noonsim.fock.displaced_tmsv_component`.
"""
import math
from dataclasses import dataclass

import numpy as np

from .beamsplitter import DEFAULT_CONVENTION
from .errors import DegenerateInputError, DomainError
from .fock import displaced_tmsv_component
from .utils import check_count, check_finite

import logging
log = logging.getLogger(__name__)


GRID_TOLERANCE = 1e-9
SILENT_HARMONIC = 1e-12


@dataclass(frozen=True)
class DetectionPattern:
    """``upper`` photons at the upper exit port, ``lower`` at the lower one.
    """
    upper: int
    lower: int

    def __post_init__(self):
        object.__setattr__(self, 'upper', check_count('upper', self.upper))
        object.__setattr__(self, 'lower', check_count('lower', self.lower))

    @property
    def n_total(self):
        return self.upper + self.lower

    @classmethod
    def parse(cls, text):
        """Parses the "2-2" / "3-1" notation.
        """
        try:
            upper, lower = (int(part) for part in text.split('-'))
        except (AttributeError, ValueError):
            raise DomainError('expected a pattern like "3-1", got %r'
                              % (text,))
        return cls(upper, lower)

    def __str__(self):
        return '%d-%d' % (self.upper, self.lower)


def _check_pattern(component, pattern):
    if pattern.n_total != component.n_total:
        raise DomainError('pattern %s counts %d photons but the component has '
                          'N=%d' % (pattern, pattern.n_total,
                                    component.n_total))


def mz_output_amplitudes(component, psi, conv=DEFAULT_CONVENTION):
    """Returns the exit-port amplitudes U_BS Phi(psi) U_BS |component>.

    :param psi: a phase or an array of phases
    :returns: array of shape psi.shape + (N+1,), index m is |m, N-m>
    """
    psi = np.asarray(psi, dtype=float)
    matrix = conv.matrix(component.n_total)
    inside = matrix @ component.amplitudes
    upper = np.arange(component.n_total + 1)
    phases = np.exp(1j * np.multiply.outer(psi, upper))
    return (phases * inside) @ matrix.T


def mz_pattern_probability(component, psi, pattern, conv=DEFAULT_CONVENTION):
    """Returns |<pattern| U_BS Phi(psi) U_BS |component>|^2.
    """
    _check_pattern(component, pattern)
    check_finite('psi', psi)
    amplitude = mz_output_amplitudes(component, psi, conv)[pattern.upper]
    return float(abs(amplitude) ** 2)


@dataclass(frozen=True, eq=False)
class CoincidenceSignal:
    """Pattern probability sampled over the interferometer phase.

    ``pattern`` may be None for signals that do not come from a component.
    """
    psi_samples: np.ndarray
    probabilities: np.ndarray
    pattern: DetectionPattern = None
    relative_units: bool = True

    def __post_init__(self):
        psi = np.array(self.psi_samples, dtype=float)
        values = np.array(self.probabilities, dtype=float)
        if psi.ndim != 1 or psi.shape != values.shape:
            raise DomainError('psi samples and probabilities must be 1-d and '
                              'of equal length')
        if not (np.all(np.isfinite(psi)) and np.all(np.isfinite(values))):
            raise DomainError('signal samples must be finite')
        if np.any(values < 0):
            raise DomainError('probabilities must be >= 0')
        psi.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, 'psi_samples', psi)
        object.__setattr__(self, 'probabilities', values)

    def rows(self):
        return list(zip(self.psi_samples.tolist(), self.probabilities.tolist()))


def coincidence_signal_sweep(src, n_total, pattern, psi_grid,
                             conv=DEFAULT_CONVENTION):
    """Builds the N-photon component once and samples the pattern
    probability on ``psi_grid``.
    """
    component = displaced_tmsv_component(src, n_total)
    _check_pattern(component, pattern)
    psi = np.asarray(psi_grid, dtype=float)
    amplitudes = mz_output_amplitudes(component, psi, conv)[..., pattern.upper]
    log.debug('signal sweep: N=%d pattern=%s points=%d',
              n_total, pattern, psi.size)
    return CoincidenceSignal(psi, np.abs(amplitudes) ** 2, pattern=pattern,
                             relative_units=True)


@dataclass(frozen=True)
class HarmonicSpectrum:
    """signal(psi) = sum_k amplitude_k cos(k psi + phase_k).
    """
    coefficients: dict
    dominant_ac: int

    def amplitude(self, harmonic):
        return self.coefficients.get(harmonic, (0.0, 0.0))[0]

    def phase(self, harmonic):
        return self.coefficients.get(harmonic, (0.0, 0.0))[1]

    def reconstruct(self, psi):
        psi = np.asarray(psi, dtype=float)
        total = np.zeros_like(psi)
        for k, (amplitude, phase) in self.coefficients.items():
            total = total + amplitude * np.cos(k * psi + phase)
        return total


def fringe_harmonics(signal):
    """Fourier analysis of a signal sampled uniformly over one period.

    The grid may start anywhere but must be uniform with step 2 pi / M;
    phases are referenced to psi = 0. Signals from an N-photon pattern need
    at least 4 N samples.
    """
    psi = signal.psi_samples
    points = psi.size
    if points < 2:
        raise DomainError('harmonic analysis needs at least 2 samples')
    step = 2.0 * math.pi / points
    if not np.allclose(np.diff(psi), step, rtol=0.0, atol=GRID_TOLERANCE):
        raise DomainError('psi grid must be uniform over exactly one period '
                          '(step 2pi/%d)' % points)
    if signal.pattern is not None and points < 4 * signal.pattern.n_total:
        raise DomainError('%d samples are too few for an N=%d signal (need %d)'
                          % (points, signal.pattern.n_total,
                             4 * signal.pattern.n_total))

    spectrum = np.fft.rfft(signal.probabilities)
    harmonics = np.arange(spectrum.size)
    spectrum = spectrum * np.exp(-1j * harmonics * psi[0])

    amplitudes = 2.0 * np.abs(spectrum) / points
    amplitudes[0] /= 2.0
    if points % 2 == 0:
        amplitudes[-1] /= 2.0
    phases = np.angle(spectrum)
    coefficients = {int(k): (float(amplitudes[k]), float(phases[k]))
                    for k in harmonics}

    dominant = 0
    if amplitudes.size > 1:
        candidate = 1 + int(np.argmax(amplitudes[1:]))
        if amplitudes[candidate] > SILENT_HARMONIC * max(1.0, amplitudes[0]):
            dominant = candidate
    return HarmonicSpectrum(coefficients, dominant)


def visibility(signal, harmonic):
    """Returns the fringe visibility amplitude_k / amplitude_0.
    """
    harmonic = check_count('harmonic', harmonic)
    if harmonic < 1:
        raise DomainError('visibility needs a harmonic >= 1')
    spectrum = fringe_harmonics(signal)
    mean = spectrum.amplitude(0)
    if mean <= 0:
        raise DegenerateInputError('signal has zero mean')
    if harmonic not in spectrum.coefficients:
        raise DomainError('harmonic %d is above the Nyquist limit of the '
                          'sample grid' % harmonic)
    return spectrum.amplitude(harmonic) / mean
