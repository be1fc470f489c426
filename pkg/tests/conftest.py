import math
import os

import numpy as np
import pytest



HERE = os.path.dirname(__file__)
FIXTURE_BASE = os.path.join(HERE, 'fixtures')


@pytest.fixture(scope='module')
def settings_ini():
    return os.path.join(FIXTURE_BASE, 'optimize.ini')


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def _n4_closed_form(src):
    # Balanced splitter, phi = 0, alpha0 == beta0: the lower port only holds
    # the squeezed vacuum exp(t/2 b+^2), the upper one the displaced
    # squeezed state exp(-t/2 a+^2 + sqrt2 u a+), so F_4 depends on
    # y = 2 u^2 / t alone.
    t = math.tanh(src.r)
    u = src.alpha0 + t * src.beta0.conjugate()
    y = 2.0 * u * u / t
    upper = math.sqrt(24.0) * (y * y / 24.0 - y / 4.0 + 1.0 / 8.0)
    lower = math.sqrt(24.0) / 8.0
    middle = (y - 1.0) / 2.0
    return (abs(upper) + lower) ** 2 / (
        2.0 * (abs(upper) ** 2 + lower ** 2 + abs(middle) ** 2))


@pytest.fixture(scope='session')
def n4_closed_form():
    return _n4_closed_form
