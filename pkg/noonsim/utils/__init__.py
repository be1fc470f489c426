import cmath
import configparser as cp
import math

import numpy as np

from ..errors import DomainError


def open_config(filepath):
    """Reads an INI file. Unreadable or malformed files give an empty
    configuration, so callers fall back to their defaults.
    """
    config = cp.ConfigParser()
    try:
        config.read(filepath)
    except cp.Error:
        pass
    return config


def check_finite(name, value):
    if not cmath.isfinite(value):
        raise DomainError('%s must be finite, got %r' % (name, value))


def check_count(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise DomainError('%s must be an integer, got %r' % (name, value))
    if value < 0:
        raise DomainError('%s must be >= 0, got %r' % (name, value))
    return int(value)


def uniform_phase_grid(points, start=0.0):
    """Returns ``points`` phases start + 2 pi k / points, k = 0..points-1.
    """
    points = check_count('points', points)
    if points == 0:
        raise DomainError('a phase grid needs at least one point')
    check_finite('start', start)
    return start + 2.0 * math.pi * np.arange(points) / points
