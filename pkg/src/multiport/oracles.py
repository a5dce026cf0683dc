"""Analytic ground-truth matrices and factorization identities.

Everything generated circuits are validated against lives here: the DFT
matrix, the Grover-inversion reflection, the interleaving permutations,
the Gauss radix-2 factorization of the Fourier matrix, the block
decomposition of Grover inversion, and the analytic success probability
of the ideal search.

Indexing is 0-based inside the matrix math and 1-based at module
boundaries (mode labels), matching the circuit layer.
"""

from __future__ import annotations

import math

import numpy as np

from . import generators
from .circuit import circuit_matrix

MATRIX_TOL = 1e-10


def dft_matrix(d: int) -> np.ndarray:
    """The unitary DFT matrix: entry (j, k) = omega^{jk} / sqrt(d), omega = e^{2 pi i / d}."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / math.sqrt(d)


def grover_inversion_matrix(d: int) -> np.ndarray:
    """The reflection about the uniform superposition: 2/d off-diagonal, 2/d - 1 diagonal."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    return np.full((d, d), 2.0 / d) - np.eye(d)


def odd_even_sort_matrix(d: int) -> np.ndarray:
    """The 2d x 2d permutation matrix P sorting odd-indexed entries first.

    P maps (v_1, v_2, ..., v_2d) to (v_1, v_3, ..., v_{2d-1}, v_2, v_4,
    ..., v_{2d}); it is the matrix of the inverse shuffle.
    """
    p = np.zeros((2 * d, 2 * d))
    for r in range(d):
        p[r, 2 * r] = 1.0
        p[d + r, 2 * r + 1] = 1.0
    return p


def shuffle_matrix(d: int) -> np.ndarray:
    """The 2d x 2d matrix of the interleaving shuffle (inverse of the odd/even sort)."""
    return odd_even_sort_matrix(d).T


def exchange_matrix(d: int) -> np.ndarray:
    """The 2d x 2d permutation Q exchanging entries 1 and d+1 of a column vector."""
    q = np.eye(2 * d)
    q[[0, d], :] = q[[d, 0], :]
    return q


def max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Max-entry absolute deviation between two matrices."""
    return float(np.max(np.abs(a - b)))


def deviation_up_to_global_phase(a: np.ndarray, b: np.ndarray) -> tuple[float, complex]:
    """Deviation of ``a`` from ``b``, retrying modulo a global phase.

    Returns (deviation, phase): exact comparison first; if it misses, the
    phase of a's largest-magnitude entry relative to b's is divided out.
    The reported phase is 1 when the exact comparison already succeeds.
    """
    exact = max_deviation(a, b)
    if exact <= MATRIX_TOL:
        return exact, 1.0 + 0.0j
    idx = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(b[idx]) == 0.0:
        return exact, 1.0 + 0.0j
    phase = a[idx] / b[idx]
    phase /= abs(phase)
    return max_deviation(a / phase, b), phase


def check_fft_factorization(d: int) -> float:
    """Max-entry deviation of the Gauss radix-2 factorization from F_{2d}.

    Builds (1/sqrt 2) [[I, D], [I, -D]] . diag(F_d, F_d) . P with
    D = diag(e^{i k pi / d}), k = 0..d-1 (the 2d-th roots; the half-size
    twiddle factors) and P the odd/even sort.
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    eye = np.eye(d)
    twiddle = np.diag(np.exp(1j * np.pi * np.arange(d) / d))
    butterfly = np.block([[eye, twiddle], [eye, -twiddle]]) / math.sqrt(2.0)
    f = dft_matrix(d)
    blocks = np.block(
        [[f, np.zeros((d, d))], [np.zeros((d, d)), f]]
    )
    lhs = butterfly @ blocks @ odd_even_sort_matrix(d)
    return max_deviation(lhs, dft_matrix(2 * d))


def check_grover_factorization(d: int) -> tuple[float, float]:
    """Deviations of the block decompositions of W_{2d} and V_{2d}.

    V_d is taken from the generated circuit (validated unitary here),
    W_d from the analytic reflection. Returns
    (max|VV . Q . VV . WW - W_{2d}|, max|(H (x) I_d) . VV - V_{2d}|).
    """
    v = circuit_matrix(generators.v_circuit(d))
    unitarity = max_deviation(v.conj().T @ v, np.eye(d))
    if unitarity > 1e-12:
        raise ValueError(f"generated V_{d} is not unitary (residual {unitarity:g})")
    zeros = np.zeros((d, d))
    vv = np.block([[v, zeros], [zeros, v]])
    w = grover_inversion_matrix(d)
    ww = np.block([[w, zeros], [zeros, w]])
    lhs_w = vv @ exchange_matrix(d) @ vv @ ww
    dev_w = max_deviation(lhs_w, grover_inversion_matrix(2 * d))

    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    lhs_v = np.kron(h, np.eye(d)) @ vv
    dev_v = max_deviation(lhs_v, circuit_matrix(generators.v_circuit(2 * d)))
    return dev_w, dev_v


def ideal_grover_success(d: int) -> float:
    """Success probability of the analytic Grover evolution.

    Evolves the uniform state under floor(pi/4 sqrt d) applications of
    oracle-then-inversion and returns the probability on the solution
    mode (the same for every solution by symmetry).
    """
    if d < 1 or d & (d - 1):
        raise ValueError(f"search size must be a power of two, got {d}")
    state = np.full(d, 1.0 / math.sqrt(d), dtype=complex)
    w = grover_inversion_matrix(d)
    for _ in range(generators.grover_iterations(d)):
        state[0] *= -1.0
        state = w @ state
    return float(abs(state[0]) ** 2)
