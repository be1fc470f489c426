"""50/50 beam splitter on N-photon components and NOON-state fidelity.
"""
import cmath
import enum
import math
import threading
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateInputError, DomainError
from .fock import PhotonComponent, log_factorial
from .utils import check_count

import logging
log = logging.getLogger(__name__)


_SQRT_HALF = math.sqrt(0.5)


class BeamSplitterConvention(enum.Enum):
    """Action of the splitter on the creation operators of the input modes.

    BALANCED:  a+ -> (a+ + b+)/sqrt2,   b+ -> (a+ - b+)/sqrt2
    SYMMETRIC: a+ -> (a+ + i b+)/sqrt2, b+ -> (i a+ + b+)/sqrt2
    """
    BALANCED = 'balanced'
    SYMMETRIC = 'symmetric'

    @property
    def mode_map(self):
        """((a+ coefficient, b+ coefficient) for the image of a+, same for b+).
        """
        if self is BeamSplitterConvention.BALANCED:
            return ((_SQRT_HALF, _SQRT_HALF), (_SQRT_HALF, -_SQRT_HALF))
        return ((_SQRT_HALF, 1j * _SQRT_HALF), (1j * _SQRT_HALF, _SQRT_HALF))

    def matrix(self, n_total):
        """Returns the (N+1) x (N+1) unitary acting on the |m, N-m> basis.
        The returned array is shared and read-only.
        """
        n_total = check_count('n_total', n_total)
        key = (self, n_total)
        matrix = _MATRIX_CACHE.get(key)
        if matrix is None:
            with _CACHE_LOCK:
                matrix = _MATRIX_CACHE.get(key)
                if matrix is None:
                    matrix = _build_matrix(self, n_total)
                    _MATRIX_CACHE[key] = matrix
                    log.debug('cached %s splitter matrix for N=%d',
                              self.value, n_total)
        return matrix


DEFAULT_CONVENTION = BeamSplitterConvention.SYMMETRIC

_MATRIX_CACHE = {}
_CACHE_LOCK = threading.Lock()


def _build_matrix(conv, n_total):
    (aa, ab), (ba, bb) = conv.mode_map
    matrix = np.zeros((n_total + 1, n_total + 1), dtype=complex)
    for m in range(n_total + 1):
        n = n_total - m
        for i in range(m + 1):
            for j in range(n + 1):
                out = i + j
                ratio = 0.5 * (log_factorial(out) + log_factorial(n_total - out)
                               - log_factorial(m) - log_factorial(n))
                matrix[out, m] += (math.comb(m, i) * math.comb(n, j)
                                   * aa ** i * ab ** (m - i)
                                   * ba ** j * bb ** (n - j)
                                   * math.exp(ratio))
    matrix.setflags(write=False)
    return matrix


def bs_transform(component, conv=DEFAULT_CONVENTION, inverse=False):
    """Sends a component through the splitter (or its inverse).
    """
    matrix = conv.matrix(component.n_total)
    if inverse:
        matrix = matrix.conj().T
    return replace(component, amplitudes=matrix @ component.amplitudes)


@dataclass(frozen=True)
class FidelityResult:
    """Overlap of a component with the NOON state after the splitter.

    ``fidelity`` is maximized over the NOON relative phase, reached at
    ``noon_phase``; ``fixed_phase_fidelity`` uses (|N,0> + |0,N>)/sqrt2.
    """
    fidelity: float
    noon_phase: float
    fixed_phase_fidelity: float
    n_total: int


def _noon_amplitudes(component, conv):
    if component.n_total < 1:
        raise DomainError('NOON fidelity needs N >= 1')
    if component.squared_norm == 0:
        raise DegenerateInputError('the N=%d component has zero weight'
                                   % component.n_total)
    out = bs_transform(component.normalize(), conv).amplitudes
    return complex(out[-1]), complex(out[0])


def noon_fidelity(component, conv=DEFAULT_CONVENTION):
    """Returns F_N = |<NOON|U_BS|Psi_N^norm>|^2 for the best NOON phase and
    for the zero phase.
    """
    upper, lower = _noon_amplitudes(component, conv)
    fidelity = min(1.0, 0.5 * (abs(upper) ** 2 + abs(lower) ** 2)
                   + abs(upper) * abs(lower))
    fixed = min(fidelity, 0.5 * abs(upper + lower) ** 2)
    return FidelityResult(fidelity=fidelity,
                          noon_phase=cmath.phase(lower * upper.conjugate()),
                          fixed_phase_fidelity=fixed,
                          n_total=component.n_total)


def noon_overlap(component, noon_phase, conv=DEFAULT_CONVENTION):
    """Returns |<NOON(phase)|U_BS|Psi_N^norm>|^2 with
    NOON(phase) = (|N,0> + e^{i phase}|0,N>)/sqrt2.
    """
    upper, lower = _noon_amplitudes(component, conv)
    return 0.5 * abs(upper + cmath.exp(-1j * noon_phase) * lower) ** 2
