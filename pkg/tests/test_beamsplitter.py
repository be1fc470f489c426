import math

import numpy as np
import pytest

from noonsim.beamsplitter import BeamSplitterConvention, bs_transform, \
    noon_fidelity, noon_overlap
from noonsim.errors import DegenerateInputError, DomainError
from noonsim.fock import PhotonComponent, Regime, SourceParams, \
    displaced_tmsv_component


BALANCED = BeamSplitterConvention.BALANCED
SYMMETRIC = BeamSplitterConvention.SYMMETRIC
SQRT_HALF = math.sqrt(0.5)


def _random_component(rng, n_total):
    amplitudes = rng.normal(size=n_total + 1) \
        + 1j * rng.normal(size=n_total + 1)
    return PhotonComponent(n_total, amplitudes)


class TestSplitterMatrix(object):

    @pytest.mark.parametrize('conv', list(BeamSplitterConvention))
    @pytest.mark.parametrize('n_total', range(11))
    def test_matrix_is_unitary(self, conv, n_total):
        matrix = conv.matrix(n_total)
        np.testing.assert_allclose(matrix.conj().T @ matrix,
                                   np.eye(n_total + 1), atol=1e-12)

    def test_matrix_is_cached_and_read_only(self):
        matrix = BALANCED.matrix(6)
        assert BALANCED.matrix(6) is matrix
        with pytest.raises(ValueError):
            matrix[0, 0] = 0

    def test_symmetric_single_photon(self):
        out = bs_transform(PhotonComponent.fock(1, 0), SYMMETRIC)
        np.testing.assert_allclose(out.amplitudes, [1j * SQRT_HALF, SQRT_HALF],
                                   atol=1e-15)

    def test_balanced_single_photon(self):
        out = bs_transform(PhotonComponent.fock(1, 0), BALANCED)
        np.testing.assert_allclose(out.amplitudes, [SQRT_HALF, SQRT_HALF],
                                   atol=1e-15)

    def test_symmetric_photon_pair(self):
        out = bs_transform(PhotonComponent.fock(1, 1), SYMMETRIC)
        np.testing.assert_allclose(out.amplitudes,
                                   [1j * SQRT_HALF, 0, 1j * SQRT_HALF],
                                   atol=1e-15)

    @pytest.mark.parametrize('conv', list(BeamSplitterConvention))
    def test_two_pairs(self, conv):
        out = bs_transform(PhotonComponent.fock(2, 2), conv)
        np.testing.assert_allclose(np.abs(out.amplitudes) ** 2,
                                   [3 / 8, 0, 1 / 4, 0, 3 / 8], atol=1e-15)

    @pytest.mark.parametrize('conv', list(BeamSplitterConvention))
    def test_norm_and_inverse(self, conv, rng):
        for n_total in range(11):
            component = _random_component(rng, n_total)
            out = bs_transform(component, conv)
            assert out.squared_norm == \
                pytest.approx(component.squared_norm, rel=1e-12)
            back = bs_transform(out, conv, inverse=True)
            np.testing.assert_allclose(back.amplitudes, component.amplitudes,
                                       atol=1e-12)


class TestNoonFidelity(object):

    @pytest.mark.parametrize('conv', list(BeamSplitterConvention))
    def test_two_pairs(self, conv):
        result = noon_fidelity(PhotonComponent.fock(2, 2), conv)
        assert result.fidelity == pytest.approx(0.75, abs=1e-12)
        assert result.n_total == 4

    @pytest.mark.parametrize('conv', list(BeamSplitterConvention))
    def test_single_pair_is_perfect(self, conv):
        result = noon_fidelity(PhotonComponent.fock(1, 1), conv)
        assert result.fidelity == pytest.approx(1.0, abs=1e-12)

    def test_spontaneous_source(self):
        component = displaced_tmsv_component(SourceParams(r=0.1), 4)
        assert noon_fidelity(component).fidelity == \
            pytest.approx(0.75, abs=1e-12)

    @pytest.mark.parametrize('conv, expected', [(BALANCED, 0.5),
                                                (SYMMETRIC, 0.125)])
    def test_coherent_source(self, conv, expected):
        src = SourceParams.symmetric(0.0, 0.8, 0.3)
        component = displaced_tmsv_component(src, 4)
        assert noon_fidelity(component, conv).fidelity == \
            pytest.approx(expected, abs=1e-12)

    def test_zero_weight_component_fails(self):
        component = displaced_tmsv_component(SourceParams(r=0.1), 3)
        with pytest.raises(DegenerateInputError):
            noon_fidelity(component)

    def test_vacuum_fails(self):
        component = displaced_tmsv_component(SourceParams(r=0.0), 4)
        with pytest.raises(DegenerateInputError):
            noon_fidelity(component)

    def test_zero_photons_fail(self):
        with pytest.raises(DomainError):
            noon_fidelity(PhotonComponent.fock(0, 0))

    @pytest.mark.parametrize('conv', list(BeamSplitterConvention))
    def test_bounds(self, conv, rng):
        for _ in range(50):
            component = _random_component(rng, int(rng.integers(1, 11)))
            result = noon_fidelity(component, conv)
            assert 0 <= result.fixed_phase_fidelity <= result.fidelity <= 1

    @pytest.mark.parametrize('conv', list(BeamSplitterConvention))
    def test_noon_phase_maximizes_overlap(self, conv, rng):
        scan = 2 * math.pi * np.arange(360) / 360
        for _ in range(10):
            component = _random_component(rng, int(rng.integers(1, 9)))
            result = noon_fidelity(component, conv)
            assert noon_overlap(component, result.noon_phase, conv) == \
                pytest.approx(result.fidelity, abs=1e-12)
            assert noon_overlap(component, 0.0, conv) == \
                pytest.approx(result.fixed_phase_fidelity, abs=1e-12)
            values = [noon_overlap(component, phase, conv) for phase in scan]
            assert max(values) <= result.fidelity + 1e-12
            assert max(values) >= result.fidelity - 1e-4

    @pytest.mark.parametrize('n_total', [1, 3, 5, 7])
    def test_odd_components_stay_below_half_when_balanced(self, n_total):
        for theta in 2 * math.pi * np.arange(16) / 16:
            src = SourceParams.from_gamma(0.1, 0.6, Regime.WEAK, theta)
            component = displaced_tmsv_component(src, n_total)
            assert noon_fidelity(component, BALANCED).fidelity <= 0.5 + 1e-12

    @pytest.mark.parametrize('r, gamma, regime', [
        (0.1, 0.47, Regime.WEAK), (0.1, 2.26, Regime.WEAK),
        (0.5, 1.0, Regime.STRONG), (4.5, 50.0, Regime.STRONG),
    ])
    def test_four_photon_closed_form(self, r, gamma, regime, n4_closed_form):
        for theta in (0.0, 0.5, 1.0, 1.5, math.pi / 2, 2.0, 3.0):
            src = SourceParams.from_gamma(r, gamma, regime, theta)
            component = displaced_tmsv_component(src, 4)
            assert noon_fidelity(component, BALANCED).fidelity == \
                pytest.approx(n4_closed_form(src), abs=1e-9)

    @pytest.mark.parametrize('conv, expected', [(BALANCED, 0.0),
                                                (SYMMETRIC, 1.0)])
    def test_fixed_phase_depends_on_convention(self, conv, expected):
        result = noon_fidelity(PhotonComponent.fock(1, 1), conv)
        assert result.fixed_phase_fidelity == pytest.approx(expected,
                                                            abs=1e-12)

    def test_symmetric_is_the_default(self):
        component = displaced_tmsv_component(
            SourceParams.symmetric(0.0, 0.8, 0.3), 4)
        assert noon_fidelity(component).fidelity == \
            pytest.approx(0.125, abs=1e-12)

    def test_odd_components_pass_half_when_symmetric(self):
        best = 0.0
        for theta in 2 * math.pi * np.arange(64) / 64:
            src = SourceParams.from_gamma(0.1, 0.6, Regime.WEAK, theta)
            component = displaced_tmsv_component(src, 5)
            best = max(best, noon_fidelity(component, SYMMETRIC).fidelity)
        assert best > 0.85
