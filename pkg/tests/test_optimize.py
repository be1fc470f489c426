import math

import numpy as np
import pytest

from noonsim.beamsplitter import BeamSplitterConvention
from noonsim.errors import DomainError
from noonsim.fock import Regime
from noonsim.optimize import OptimizerSettings, SweepSpec, critical_phases, \
    curve_maximum, curve_peak, fidelity_vs_theta, flux_report, \
    optimize_gamma_theta, refine_theta


BALANCED = BeamSplitterConvention.BALANCED


def _real_axis_optimum(r):
    """Densely scans the four-photon fidelity along theta = 0, where
    y = 2 u^2 / t is real, and returns (gamma, fidelity) of the maximum in
    the weak regime.
    """
    t = math.tanh(r)
    y = np.linspace(0.3, 3.0, 270001)
    upper = math.sqrt(24.0) * (y * y / 24.0 - y / 4.0 + 1.0 / 8.0)
    lower = math.sqrt(24.0) / 8.0
    middle = (y - 1.0) / 2.0
    fidelity = (np.abs(upper) + lower) ** 2 \
        / (2.0 * (upper ** 2 + lower ** 2 + middle ** 2))
    best = int(np.argmax(fidelity))
    alpha_sq = y[best] * t / (2.0 * (1.0 + t) ** 2)
    return alpha_sq / r, float(fidelity[best])


class TestOptimizerSettings(object):

    def test_defaults(self):
        settings = OptimizerSettings()
        assert (settings.theta_points, settings.gamma_points) == (64, 64)
        assert (settings.refine_rounds, settings.refine_points) == (4, 16)
        assert settings.tolerance == 1e-6

    def test_from_config(self, settings_ini):
        settings = OptimizerSettings.from_config(settings_ini)
        assert settings.theta_points == 32
        assert settings.gamma_points == 24
        assert settings.refine_rounds == 2
        assert settings.refine_points == 16

    def test_missing_config_keeps_defaults(self, tmp_path):
        missing = str(tmp_path / 'nowhere.ini')
        assert OptimizerSettings.from_config(missing) == OptimizerSettings()

    def test_updated_skips_none(self):
        settings = OptimizerSettings().updated(theta_points=8,
                                               gamma_points=None)
        assert settings.theta_points == 8
        assert settings.gamma_points == 64

    @pytest.mark.parametrize('kwargs', [{'refine_points': 2},
                                        {'theta_points': 0},
                                        {'tolerance': -1.0},
                                        {'gamma_points': 2.5}])
    def test_invalid_settings_fail(self, kwargs):
        with pytest.raises(DomainError):
            OptimizerSettings(**kwargs)


class TestSweep(object):

    def test_spontaneous_curve_is_flat(self):
        spec = SweepSpec.uniform(0.1, 4, theta_points=64)
        values = [f for _, f in fidelity_vs_theta(spec, 0.0)]
        np.testing.assert_allclose(values, 0.75, atol=1e-12)

    def test_default_grid(self):
        spec = SweepSpec(0.1, 4)
        assert spec.theta_grid.size == 256
        assert spec.theta_grid[0] == 0.0

    def test_theta_reflection_symmetry(self):
        spec = SweepSpec.uniform(0.1, 4, theta_points=64, convention=BALANCED)
        values = [f for _, f in fidelity_vs_theta(spec, 0.6)]
        for k in range(1, 64):
            assert values[k] == pytest.approx(values[64 - k], abs=1e-9)

    def test_regimes_agree_at_equal_seed(self):
        r = 0.1
        weak = SweepSpec.uniform(r, 4, Regime.WEAK, theta_points=16)
        strong = SweepSpec.uniform(r, 4, Regime.STRONG, theta_points=16)
        gamma_strong = 0.6 * r / math.sinh(r) ** 2
        for theta in weak.theta_grid:
            assert weak.fidelity(0.6, theta) == \
                pytest.approx(strong.fidelity(gamma_strong, theta), abs=1e-12)

    def test_coherent_limit(self):
        spec = SweepSpec.uniform(0.1, 4, theta_points=32, convention=BALANCED)
        for _, fidelity in fidelity_vs_theta(spec, 1e4):
            assert fidelity == pytest.approx(0.5, abs=0.02)

    def test_high_gain_curves_are_bounded(self):
        spec = SweepSpec.uniform(4.5, 5, Regime.STRONG, (10, 50, 150),
                                 theta_points=32)
        for gamma in spec.gamma_values:
            for _, fidelity in fidelity_vs_theta(spec, gamma):
                assert math.isfinite(fidelity)
                assert 0.0 <= fidelity <= 1.0

    @pytest.mark.parametrize('kwargs', [{'n_total': 0},
                                        {'gamma_values': (-1.0,)},
                                        {'gamma_values': ()},
                                        {'r': -0.1},
                                        {'theta_grid': []}])
    def test_invalid_spec_fails(self, kwargs):
        params = dict(r=0.1, n_total=4)
        params.update(kwargs)
        with pytest.raises(DomainError):
            SweepSpec(**params)

    def test_curve_maximum_prefers_smallest_theta(self):
        curve = [(1.0, 0.5), (0.5, 0.5), (2.0, 0.4)]
        assert curve_maximum(curve) == (0.5, 0.5)
        with pytest.raises(DomainError):
            curve_maximum([])


class TestCurvePeak(object):

    def test_critical_phases(self):
        assert critical_phases() == \
            pytest.approx((math.pi / 2, 3 * math.pi / 2))
        assert critical_phases(math.pi) == pytest.approx((0.0, math.pi))
        assert critical_phases(-math.pi) == pytest.approx((0.0, math.pi))

    def test_refinement_never_loses(self):
        spec = SweepSpec.uniform(0.1, 4, theta_points=16)
        theta, fidelity, evaluations = refine_theta(spec, 0.6, 0.3, 0.4)
        assert fidelity >= spec.fidelity(0.6, 0.3)
        assert fidelity == pytest.approx(spec.fidelity(0.6, theta), abs=1e-15)
        assert evaluations > 1

    def test_five_photon_weak_gain(self):
        spec = SweepSpec.uniform(0.1, 5, Regime.WEAK, (0.6,))
        curve = fidelity_vs_theta(spec, 0.6)
        theta, fidelity = curve_peak(spec, 0.6, curve)
        assert fidelity == pytest.approx(0.91, abs=0.01)
        assert fidelity >= max(f for _, f in curve)
        assert fidelity == pytest.approx(spec.fidelity(0.6, theta), abs=1e-15)

    @pytest.mark.parametrize('gamma, expected', [(10.0, 0.91), (50.0, 0.88),
                                                 (150.0, 0.84)])
    def test_five_photon_high_gain(self, gamma, expected):
        spec = SweepSpec.uniform(4.5, 5, Regime.STRONG, (gamma,))
        curve = fidelity_vs_theta(spec, gamma)
        theta, fidelity = curve_peak(spec, gamma, curve)
        assert fidelity == pytest.approx(expected, abs=0.02)
        assert min(abs(theta - phase) for phase in critical_phases()) < 0.02

    def test_grid_misses_the_high_gain_peak(self):
        spec = SweepSpec.uniform(4.5, 5, Regime.STRONG, (50.0,))
        curve = fidelity_vs_theta(spec, 50.0)
        assert spec.peak_width(50.0) < 2e-3
        assert max(f for _, f in curve) < 0.7
        assert curve_peak(spec, 50.0, curve)[1] > 0.85

    def test_unseeded_peak_width(self):
        spec = SweepSpec.uniform(0.1, 4, theta_points=8)
        assert spec.peak_width(0.0) == math.inf


class TestOptimize(object):

    def test_four_photon_optimum(self):
        gamma_ref, fidelity_ref = _real_axis_optimum(0.1)
        optimum = optimize_gamma_theta(0.1, 4, Regime.WEAK, (0.1, 10.0),
                                       conv=BALANCED)
        assert optimum.fidelity_star >= 0.985
        assert optimum.fidelity_star == pytest.approx(fidelity_ref, abs=1e-5)
        assert optimum.gamma_star == pytest.approx(gamma_ref, abs=0.02)
        theta = optimum.theta_star
        assert min(abs(theta), abs(theta - math.pi),
                   abs(theta - 2 * math.pi)) < 0.05

    def test_five_photon_optimum(self):
        optimum = optimize_gamma_theta(0.1, 5, Regime.WEAK, (0.1, 10.0))
        assert optimum.fidelity_star == pytest.approx(0.91, abs=0.01)
        assert 0.45 <= optimum.gamma_star <= 0.65

    def test_high_gain_optimum_finds_the_narrow_peak(self):
        settings = OptimizerSettings(theta_points=32, gamma_points=16)
        optimum = optimize_gamma_theta(4.5, 5, Regime.STRONG, (10.0, 150.0),
                                       settings)
        assert optimum.coarse_fidelity > 0.85
        assert optimum.fidelity_star >= 0.89
        assert min(abs(optimum.theta_star - phase)
                   for phase in critical_phases()) < 0.02
        assert optimum.fidelity_star == max(f for _, f in optimum.curve)

    def test_optimum_heads_its_curve(self):
        optimum = optimize_gamma_theta(0.1, 4, Regime.WEAK, (0.1, 10.0))
        assert optimum.fidelity_star == max(f for _, f in optimum.curve)
        assert optimum.fidelity_star >= optimum.coarse_fidelity
        assert (optimum.theta_star, optimum.fidelity_star) in optimum.curve
        assert 1 <= optimum.rounds <= 4

    def test_two_photons_prefer_no_seed(self):
        optimum = optimize_gamma_theta(0.1, 2, Regime.WEAK, (0.0, 10.0))
        assert optimum.fidelity_star > 1 - 1e-9
        assert optimum.gamma_star < 0.05

    def test_is_deterministic(self, settings_ini):
        settings = OptimizerSettings.from_config(settings_ini)
        first = optimize_gamma_theta(0.3, 4, Regime.STRONG, (0.1, 5.0),
                                     settings)
        second = optimize_gamma_theta(0.3, 4, Regime.STRONG, (0.1, 5.0),
                                      settings)
        assert first == second
        assert len(first.curve) >= settings.theta_points

    @pytest.mark.parametrize('bounds', [(5.0, 1.0), (-1.0, 2.0),
                                        (0.0, math.inf), (1.0,)])
    def test_invalid_bounds_fail(self, bounds):
        with pytest.raises(DomainError):
            optimize_gamma_theta(0.1, 4, gamma_bounds=bounds)


class TestFlux(object):

    def test_high_gain_flux(self):
        report = flux_report(4.5, 50, Regime.STRONG)
        assert report.mean_pdc_pairs == pytest.approx(4.1e6, rel=0.02)
        assert 1e10 / 1.3 <= report.coherent_pair_flux <= 1e10 * 1.3

    def test_weak_flux(self):
        report = flux_report(0.1, 2.26, Regime.WEAK)
        assert report.coherent_photons_per_mode == pytest.approx(0.226)
        assert report.coherent_pair_flux == pytest.approx(0.051076)
        assert report.regime is Regime.WEAK

    def test_no_gain(self):
        report = flux_report(0.0, 0.0)
        assert report.mean_pdc_pairs == 0
        assert report.coherent_pair_flux == 0
        assert report.mean_photons_per_mode == 0

    def test_invalid_arguments_fail(self):
        with pytest.raises(DomainError):
            flux_report(math.nan, 1.0)
        with pytest.raises(DomainError):
            flux_report(0.1, -1.0)
