"""Structural verification suite for generated circuits.

Each check compares a generated circuit against an independent
analytic reference: transfer matrices against closed-form matrices,
element counts and depths against the published formulas, and the
ideal Grover success probabilities against direct state evolution.
The suite returns structured results so both the CLI and the service
can render them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import generators, oracles
from .circuit import circuit_matrix, depth, element_count
from .generators import grover_search, phi, prep, shuffle_sigma

MATRIX_TOL = 1e-10
STATE_TOL = 1e-12
SUCCESS_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check."""

    name: str
    expected: str
    actual: str
    deviation: float
    tolerance: float
    passed: bool


def _matrix_check(name: str, expected: str, deviation: float) -> CheckResult:
    return CheckResult(
        name=name,
        expected=expected,
        actual=f"deviation {deviation:.3e}",
        deviation=deviation,
        tolerance=MATRIX_TOL,
        passed=deviation <= MATRIX_TOL,
    )


def _exact_check(name: str, expected: int, actual: int) -> CheckResult:
    return CheckResult(
        name=name,
        expected=str(expected),
        actual=str(actual),
        deviation=float(abs(actual - expected)),
        tolerance=0.0,
        passed=actual == expected,
    )


def _dims(max_dim: int, start: int = 2) -> list[int]:
    dims = []
    d = start
    while d <= max_dim:
        dims.append(d)
        d *= 2
    return dims


def run_verification(max_dim: int = 32) -> list[CheckResult]:
    """Run every structural check up to max_dim; returns one result each."""
    checks: list[CheckResult] = []

    for d in _dims(max_dim):
        dev = oracles.max_deviation(
            circuit_matrix(generators.qft(d)), oracles.dft_matrix(d)
        )
        checks.append(_matrix_check(f"qft({d}) vs DFT matrix", "deviation <= 1e-10", dev))

    for d in _dims(min(max_dim, 16)):
        dev, _ = oracles.deviation_up_to_global_phase(
            circuit_matrix(generators.grover_inversion(d)),
            oracles.grover_inversion_matrix(d),
        )
        checks.append(
            _matrix_check(f"w({d}) vs (2/d)J - I", "deviation <= 1e-10", dev)
        )

    for d in _dims(min(max_dim, 8), start=1):
        dev = oracles.check_fft_factorization(d)
        checks.append(_matrix_check(f"fft factorization d={d}", "deviation <= 1e-10", dev))

    for d in _dims(min(max_dim, 4)):
        dev_w, dev_v = oracles.check_grover_factorization(d)
        checks.append(
            _matrix_check(f"grover factorization d={d}", "deviation <= 1e-10", max(dev_w, dev_v))
        )

    for d in _dims(min(max_dim, 16)):
        sigma = circuit_matrix(shuffle_sigma(d))
        dev = oracles.max_deviation(sigma, oracles.shuffle_matrix(d))
        checks.append(_matrix_check(f"sigma({d}) permutation", "deviation <= 1e-10", dev))
        phi_mat = circuit_matrix(phi(d))
        target = np.eye(2 * d)
        target[[0, d], :] = target[[d, 0], :]
        dev = oracles.max_deviation(phi_mat, target)
        checks.append(_matrix_check(f"phi({d}) exchange", "deviation <= 1e-10", dev))

    for family in (generators.QFT, generators.V, generators.W, generators.PREP):
        for d in _dims(max_dim):
            circuit = generators.build(family, d)
            checks.append(
                _exact_check(
                    f"count {family}({d})",
                    generators.count_formula(family, d),
                    element_count(circuit),
                )
            )

    for d, total in ((4, 14), (8, 112)):
        circuit = grover_search(d, solution=1)
        checks.append(_exact_check(f"count grover-search({d})", total, element_count(circuit)))

    for family in (generators.QFT, generators.W):
        for d in _dims(min(max_dim, 16), start=4):
            circuit = generators.build(family, d)
            checks.append(
                _exact_check(
                    f"depth {family}({d})",
                    generators.depth_formula(family, d),
                    depth(circuit),
                )
            )

    for d in _dims(min(max_dim, 16)):
        state = np.zeros(d, dtype=complex)
        state[0] = 1.0
        matrix = circuit_matrix(prep(d))
        dev = float(np.max(np.abs(matrix @ state - np.full(d, 1 / np.sqrt(d)))))
        checks.append(
            CheckResult(
                name=f"prep({d}) uniform state",
                expected="deviation <= 1e-12",
                actual=f"deviation {dev:.3e}",
                deviation=dev,
                tolerance=STATE_TOL,
                passed=dev <= STATE_TOL,
            )
        )

    for d, target in ((4, 1.0), (8, 121 / 128)):
        success = oracles.ideal_grover_success(d)
        dev = abs(success - target)
        checks.append(
            CheckResult(
                name=f"ideal grover success d={d}",
                expected=repr(target),
                actual=repr(success),
                deviation=dev,
                tolerance=SUCCESS_TOL,
                passed=dev <= SUCCESS_TOL,
            )
        )

    return checks


def all_passed(checks: list[CheckResult]) -> bool:
    return all(c.passed for c in checks)
