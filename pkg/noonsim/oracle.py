"""Brute-force truncated Fock-space construction of the source state.

This is the independent check on the closed-form amplitudes of
:mod:`noonsim.fock`: it sums the two-mode squeezed vacuum series against
displacement matrix elements, with no disentangling involved.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError
from .fock import PhotonComponent, SourceParams, log_cosh, sinh_squared
from .utils import check_count, check_finite

import logging
log = logging.getLogger(__name__)


ORACLE_TOLERANCE = 1e-10


def displacement_matrix(alpha, cutoff):
    """Returns the (cutoff+1) x (cutoff+1) block <m|D(alpha)|k>.

    Built column by column from D|k> = (a+ - conj(alpha)) D|k-1> / sqrt(k),
    so every entry is exact (no truncation of the operator).
    """
    check_finite('alpha', alpha)
    cutoff = check_count('cutoff', cutoff)
    alpha = complex(alpha)
    dim = cutoff + 1
    sqrt_m = np.sqrt(np.arange(dim))

    matrix = np.zeros((dim, dim), dtype=complex)
    matrix[0, 0] = math.exp(-0.5 * abs(alpha) ** 2)
    for m in range(1, dim):
        matrix[m, 0] = alpha / sqrt_m[m] * matrix[m - 1, 0]
    for k in range(1, dim):
        column = -alpha.conjugate() * matrix[:, k - 1]
        column[1:] += sqrt_m[1:] * matrix[:-1, k - 1]
        matrix[:, k] = column / sqrt_m[k]
    return matrix


def displacement_matrix_element(alpha, m, k):
    """Returns <m|D(alpha)|k>.
    """
    m = check_count('m', m)
    k = check_count('k', k)
    return complex(displacement_matrix(alpha, max(m, k))[m, k])


def oracle_cutoff(src):
    """Default per-mode cutoff: max(30, ceil(M + 8 sqrt(M))) with M the
    larger mean photon number of the two modes.
    """
    mean = sinh_squared(src.r) + max(abs(src.alpha0), abs(src.beta0)) ** 2
    return max(30, int(math.ceil(mean + 8.0 * math.sqrt(mean))))


@dataclass(frozen=True, eq=False)
class FockTable:
    """Amplitudes <j,k|D S|0> for j, k <= cutoff.
    """
    amplitudes: np.ndarray
    cutoff: int
    missing_weight: float

    def component(self, n_total):
        """Returns the absolute N-photon slice of the table.
        """
        n_total = check_count('n_total', n_total)
        if n_total > self.cutoff:
            raise DomainError('N=%d exceeds the table cutoff %d'
                              % (n_total, self.cutoff))
        amplitudes = [self.amplitudes[m, n_total - m]
                      for m in range(n_total + 1)]
        return PhotonComponent(n_total, amplitudes)


def truncated_state_oracle(src, cutoff=None, tolerance=ORACLE_TOLERANCE):
    """Returns the truncated two-mode amplitude table of the source state.

    :param src: the source parameters
    :param cutoff: per-mode photon cutoff, defaults to :func:`oracle_cutoff`
    :param tolerance: largest probability weight allowed outside the table
    :raises AccuracyError: when the table misses more than ``tolerance``
    """
    if not isinstance(src, SourceParams):
        raise DomainError('expected SourceParams, got %r' % (src,))
    if cutoff is None:
        cutoff = oracle_cutoff(src)
    cutoff = check_count('cutoff', cutoff)
    log.debug('oracle: r=%g alpha0=%s beta0=%s cutoff=%d',
              src.r, src.alpha0, src.beta0, cutoff)

    lam = -cmath.exp(1j * src.phi) * math.tanh(src.r)
    pairs = np.array([lam ** n for n in range(cutoff + 1)]) \
        * math.exp(-log_cosh(src.r))
    disp_a = displacement_matrix(src.alpha0, cutoff)
    disp_b = displacement_matrix(src.beta0, cutoff)
    # table[j, k] = sum_n <j|D(alpha0)|n> c_n <k|D(beta0)|n>
    table = (disp_a * pairs) @ disp_b.T

    missing = 1.0 - float(np.sum(np.abs(table) ** 2))
    if abs(missing) > tolerance:
        raise AccuracyError('cutoff %d leaves an estimated weight of %.3g '
                            'outside the table (tolerance %.3g)'
                            % (cutoff, missing, tolerance),
                            missing_weight=missing, cutoff=cutoff)
    table.setflags(write=False)
    return FockTable(table, cutoff, missing)
