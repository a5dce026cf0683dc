import numpy as np
import pytest

from multiport.circuit import apply
from multiport.experiments import (
    ExperimentSpec,
    fd_histogram,
    fidelity,
    haar_state,
    run_experiment,
    run_grover_experiment,
    run_qft_experiment,
    summarize,
)
from multiport.generators import grover_search, qft
from multiport.noise import NoiseParams, realize, trial_rng


class TestHaarState:
    def test_unit_norm(self):
        rng = np.random.default_rng(0)
        for d in (2, 4, 8, 17):
            v = haar_state(d, rng)
            assert abs(np.linalg.norm(v) - 1.0) <= 1e-12

    def test_first_coordinate_mass_is_uniform_on_average(self):
        rng = np.random.default_rng(1)
        d = 4
        mass = np.mean([abs(haar_state(d, rng)[0]) ** 2 for _ in range(20000)])
        assert abs(mass - 1 / d) < 0.01

    def test_rejects_non_positive_dimension(self):
        with pytest.raises(ValueError):
            haar_state(0, np.random.default_rng(0))


class TestFidelity:
    def test_identical_states(self):
        v = np.array([1, 1j]) / np.sqrt(2)
        assert fidelity(v, v) == 1.0

    def test_orthogonal_states(self):
        assert fidelity(np.array([1, 0]), np.array([0, 1])) == 0.0

    def test_uniform_loss_lowers_unnormalized_fidelity(self):
        v = np.array([1, 0, 0, 1j]) / np.sqrt(2)
        lossy = np.sqrt(0.95) * v
        assert abs(fidelity(v, lossy, "unnormalized") - 0.95) <= 1e-12
        assert abs(fidelity(v, lossy, "normalized") - 1.0) <= 1e-12

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            fidelity(np.ones(2), np.ones(3))

    def test_unknown_convention_rejected(self):
        with pytest.raises(ValueError):
            fidelity(np.ones(2), np.ones(2), "trace")


class TestFdHistogram:
    def test_textbook_example(self):
        bins = fd_histogram(np.arange(1.0, 9.0))
        assert len(bins) == 2
        lower, width, count = bins[0]
        assert lower == 1.0 and width == 3.5 and count == 4
        assert bins[1][2] == 4

    def test_degenerate_sample_is_single_bin(self):
        bins = fd_histogram(np.full(100, 0.7))
        assert len(bins) == 1
        assert bins[0][2] == 100

    def test_counts_sum_to_sample_size(self):
        rng = np.random.default_rng(2)
        values = rng.random(5000)
        bins = fd_histogram(values)
        assert sum(count for _, _, count in bins) == 5000

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            fd_histogram(np.array([]))


class TestSummarize:
    def test_known_moments(self):
        stats = summarize(np.array([1.0, 2.0, 3.0, 4.0]))
        assert stats.mean == 2.5
        assert stats.median == 2.5
        assert abs(stats.std - np.sqrt(1.25)) <= 1e-15
        assert stats.trials == 4

    def test_histogram_counts_match_trials(self):
        rng = np.random.default_rng(3)
        stats = summarize(rng.random(1000))
        assert sum(c for _, _, c in stats.histogram) == stats.trials == 1000


class TestSpecValidation:
    def test_zero_trials_rejected(self):
        with pytest.raises(ValueError):
            ExperimentSpec(kind="qft", d=4, trials=0)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            ExperimentSpec(kind="shor", d=4, trials=10)

    def test_unknown_convention_rejected(self):
        with pytest.raises(ValueError):
            ExperimentSpec(kind="qft", d=4, trials=10, convention="trace")

    def test_zero_workers_rejected(self):
        with pytest.raises(ValueError):
            ExperimentSpec(kind="qft", d=4, trials=10, workers=0)


class TestZeroNoise:
    @pytest.mark.parametrize("kind,d", (("qft", 4), ("qft", 8), ("grover", 4), ("grover", 8)))
    def test_identity_fidelity(self, kind, d):
        spec = ExperimentSpec(kind=kind, d=d, trials=500,
                              noise=NoiseParams.noiseless(), seed=1)
        result = run_experiment(spec)
        assert np.all(result.fidelities == 1.0)
        assert result.stats.mean == 1.0
        assert result.stats.std == 0.0


class TestScalarCrossCheck:
    """The vectorized kernel must agree with the scalar path.

    The evolution arithmetic is identical; only the final overlap sum
    may differ in the last digit (BLAS vdot vs elementwise reduction),
    hence the 1e-12 bound instead of equality.
    """

    def test_qft_trials_match_scalar_pipeline(self):
        spec = ExperimentSpec(kind="qft", d=4, trials=32, seed=11)
        result = run_experiment(spec)
        circuit = qft(4)
        for t in range(spec.trials):
            rng = trial_rng(spec.seed, t)
            v = haar_state(4, rng)
            noisy = realize(circuit, spec.noise, rng)
            expected = fidelity(apply(circuit, v), apply(noisy, v), spec.convention)
            assert abs(result.fidelities[t] - expected) <= 1e-12

    def test_grover_trials_match_scalar_pipeline(self):
        spec = ExperimentSpec(kind="grover", d=8, trials=32, seed=13)
        result = run_experiment(spec)
        e1 = np.zeros(8, dtype=complex)
        e1[0] = 1.0
        for t in range(spec.trials):
            rng = trial_rng(spec.seed, t)
            solution = int(rng.integers(1, 9))
            circuit = grover_search(8, solution)
            noisy = realize(circuit, spec.noise, rng)
            expected = fidelity(apply(circuit, e1), apply(noisy, e1), spec.convention)
            assert abs(result.fidelities[t] - expected) <= 1e-12


class TestDeterminism:
    def test_same_seed_same_result(self):
        spec = ExperimentSpec(kind="qft", d=4, trials=300, seed=5)
        a = run_experiment(spec)
        b = run_experiment(spec)
        assert np.array_equal(a.fidelities, b.fidelities)

    def test_worker_count_invariance(self):
        base = ExperimentSpec(kind="grover", d=4, trials=9000, seed=5)
        reference = run_experiment(base)
        for workers in (4, 8):
            spec = ExperimentSpec(kind="grover", d=4, trials=9000, seed=5,
                                  workers=workers)
            assert np.array_equal(run_experiment(spec).fidelities,
                                  reference.fidelities)

    def test_different_seeds_differ(self):
        a = run_experiment(ExperimentSpec(kind="qft", d=4, trials=100, seed=0))
        b = run_experiment(ExperimentSpec(kind="qft", d=4, trials=100, seed=1))
        assert not np.array_equal(a.fidelities, b.fidelities)


class TestNoiseResponse:
    def test_mean_fidelity_decreases_with_loss(self):
        means = []
        for loss_mean in (0.0, 0.1, 0.3):
            noise = NoiseParams(bs_std=0.0, swap_mean=0.0, swap_std=0.0,
                                loss_mean=loss_mean, loss_std=0.0)
            spec = ExperimentSpec(kind="qft", d=8, trials=2000, noise=noise, seed=2)
            means.append(run_experiment(spec).stats.mean)
        assert means[0] > means[1] > means[2]

    def test_normalized_convention_never_below_unnormalized(self):
        for convention in ("unnormalized", "normalized"):
            spec = ExperimentSpec(kind="qft", d=4, trials=400, seed=3,
                                  convention=convention)
            if convention == "unnormalized":
                unnorm = run_experiment(spec).fidelities
            else:
                norm = run_experiment(spec).fidelities
        assert np.all(norm >= unnorm - 1e-12)


class TestWrappers:
    def test_qft_wrapper_returns_stats(self):
        stats = run_qft_experiment(ExperimentSpec(kind="qft", d=4, trials=50))
        assert stats.trials == 50

    def test_grover_wrapper_returns_stats(self):
        stats = run_grover_experiment(ExperimentSpec(kind="grover", d=4, trials=50))
        assert stats.trials == 50
