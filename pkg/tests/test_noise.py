import math

import numpy as np
import pytest

from multiport.circuit import circuit_matrix
from multiport.generators import grover_search, qft
from multiport.noise import (
    NoiseParams,
    element_kind_counts,
    realize,
    rectified_gaussian,
    sample_noise,
    trial_rng,
)


def _rectified_mean(mu: float, sigma: float) -> float:
    """E[max(0, X)] for X ~ N(mu, sigma^2), from the Gaussian cdf/pdf."""
    z = mu / sigma
    cdf = 0.5 * (1 + math.erf(z / math.sqrt(2)))
    pdf = math.exp(-z * z / 2) / math.sqrt(2 * math.pi)
    return mu * cdf + sigma * pdf


class TestNoiseParams:
    def test_defaults_match_fabrication_model(self):
        p = NoiseParams()
        assert (p.bs_mean, p.bs_std) == (0.5, 0.04)
        assert (p.swap_mean, p.swap_std) == (0.02, 0.02)
        assert (p.loss_mean, p.loss_std) == (0.05, 0.025)

    def test_negative_std_rejected(self):
        with pytest.raises(ValueError):
            NoiseParams(bs_std=-0.1)

    def test_mean_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            NoiseParams(swap_mean=1.5)

    def test_noiseless_is_degenerate(self):
        p = NoiseParams.noiseless()
        assert p.bs_mean == 0.5
        assert p.bs_std == p.swap_mean == p.swap_std == 0.0
        assert p.loss_mean == p.loss_std == 0.0


class TestTrialRng:
    def test_reproducible(self):
        a = trial_rng(42, 17).random(5)
        b = trial_rng(42, 17).random(5)
        assert np.array_equal(a, b)

    def test_trials_are_distinct_streams(self):
        a = trial_rng(42, 0).random(5)
        b = trial_rng(42, 1).random(5)
        assert not np.array_equal(a, b)

    def test_seeds_are_distinct_streams(self):
        a = trial_rng(1, 0).random(5)
        b = trial_rng(2, 0).random(5)
        assert not np.array_equal(a, b)


class TestRectifiedGaussian:
    def test_never_negative(self):
        rng = np.random.default_rng(3)
        draws = rectified_gaussian(0.02, 0.02, rng, size=10000)
        assert np.all(draws >= 0)

    def test_sample_mean_matches_analytic_value(self):
        rng = np.random.default_rng(5)
        draws = rectified_gaussian(0.05, 0.025, rng, size=200000)
        expected = _rectified_mean(0.05, 0.025)
        assert abs(expected - 0.050212) < 1e-5
        assert abs(float(draws.mean()) - expected) < 5e-4

    def test_zero_mass_for_swap_parameters(self):
        rng = np.random.default_rng(7)
        draws = rectified_gaussian(0.02, 0.02, rng, size=100000)
        zero_mass = float(np.mean(draws == 0))
        assert abs(zero_mass - 0.1587) < 0.005

    def test_zero_std_is_deterministic(self):
        rng = np.random.default_rng(11)
        draws = rectified_gaussian(0.5, 0.0, rng, size=10)
        assert np.all(draws == 0.5)


class TestSampleNoise:
    def test_shapes_follow_counts(self):
        rng = np.random.default_rng(0)
        draws = sample_noise((3, 5, 2), NoiseParams(), rng)
        assert draws.bs_reflectivity.shape == (3,)
        assert draws.swap_reflectivity.shape == (5,)
        assert draws.shifter_loss.shape == (2,)

    def test_bs_reflectivity_clipped_to_unit_interval(self):
        rng = np.random.default_rng(0)
        draws = sample_noise((100000, 0, 0), NoiseParams(bs_std=0.3), rng)
        assert np.all((draws.bs_reflectivity >= 0) & (draws.bs_reflectivity <= 1))

    def test_bs_sample_mean(self):
        rng = np.random.default_rng(1)
        draws = sample_noise((100000, 0, 0), NoiseParams(), rng)
        assert abs(float(draws.bs_reflectivity.mean()) - 0.5) < 5e-4


class TestRealize:
    def test_zero_noise_preserves_circuit(self):
        c = qft(8)
        realized = realize(c, NoiseParams.noiseless(), np.random.default_rng(0))
        assert realized == c

    def test_structure_preserved(self):
        c = grover_search(4, solution=2)
        realized = realize(c, NoiseParams(), trial_rng(0, 0))
        assert realized.d == c.d
        assert len(realized.layers) == len(c.layers)
        for noisy, clean in zip(realized.elements(), c.elements()):
            assert noisy.kind == clean.kind
            assert noisy.modes == clean.modes
            assert noisy.phase == clean.phase

    def test_element_kind_counts(self):
        counts = element_kind_counts(qft(8))
        assert counts == (12, 24, 5)
        assert sum(counts) == 41

    def test_realized_matrix_is_contraction(self):
        c = qft(8)
        for trial in range(20):
            realized = realize(c, NoiseParams(), trial_rng(9, trial))
            singular = np.linalg.svd(circuit_matrix(realized), compute_uv=False)
            assert np.all(singular <= 1 + 1e-12)

    def test_same_rng_state_gives_same_realization(self):
        c = qft(4)
        a = realize(c, NoiseParams(), trial_rng(5, 3))
        b = realize(c, NoiseParams(), trial_rng(5, 3))
        assert a == b
