"""Recursive constructors for the multiport circuit families.

Each family doubles: a circuit on 2d modes is assembled from a pair of
circuits on d modes placed side by side, plus sparse interleaving
networks of nearest-neighbour swaps. Families:

- ``qft``: discrete Fourier transform F_d (convention omega = e^{2 pi i / d}).
- ``shuffle_sigma``: the interleaving permutation Sigma on 2d modes.
- ``v_circuit``: the Hadamard-tensor unitary V_d used inside Grover inversion.
- ``phi``: swap network exchanging modes 1 and d+1 on 2d modes.
- ``grover_inversion``: the reflection W_d = 2|psi><psi| - I about the
  uniform superposition.
- ``prep``: maps basis mode 1 to the uniform superposition.
- ``oracle`` / ``grover_search``: pi-phase marking and the full search circuit.

Closed-form element counts and depths are in ``count_formula`` and
``depth_formula``; generated circuits must agree with both exactly.
"""

from __future__ import annotations

import math
from dataclasses import replace

from .circuit import (
    Circuit,
    Layer,
    beam_splitter,
    concat,
    inverse,
    phase_shifter,
    swap,
)

QFT = "qft"
SHUFFLE = "shuffle"
V = "v"
W = "w"
PHI = "phi"
PREP = "prep"
ORACLE = "oracle"
GROVER_SEARCH = "grover-search"

FAMILIES = (QFT, SHUFFLE, V, W, PHI, PREP, ORACLE, GROVER_SEARCH)


def _require_power_of_two(d: int, family: str) -> int:
    """Validate d = 2^k, k >= 1, and return k."""
    if d < 2 or d & (d - 1):
        raise ValueError(f"{family} requires a power-of-two mode count >= 2, got {d}")
    return d.bit_length() - 1


def _shifted_layer(layer: Layer, offset: int) -> tuple:
    return tuple(replace(e, modes=tuple(m + offset for m in e.modes)) for e in layer.elements)


def _pair_layers(c: Circuit) -> list[Layer]:
    """Two copies of ``c`` side by side, merged layer-for-layer."""
    return [
        Layer(layer.elements + _shifted_layer(layer, c.d)) for layer in c.layers
    ]


def shuffle_sigma(d: int) -> Circuit:
    """The shuffle Sigma on 2d modes, interleaving the two halves.

    Sigma sends the amplitude vector (v_1, ..., v_2d) to
    (v_1, v_{d+1}, v_2, v_{d+2}, ..., v_d, v_{2d}), realized as a
    triangle of d(d-1)/2 nearest-neighbour swaps.
    """
    if d < 1:
        raise ValueError(f"shuffle needs d >= 1, got {d}")
    layers = []
    for t in range(1, d):
        start = d - t + 1
        layers.append(Layer(tuple(swap(start + 2 * k) for k in range(t))))
    return Circuit(2 * d, tuple(layers))


def _hadamard_circuit() -> Circuit:
    return Circuit(2, (Layer((beam_splitter(1),)),))


def qft(d: int, base: Circuit | None = None) -> Circuit:
    """QFT circuit on d modes by recursive doubling from ``base``.

    ``base`` must implement the DFT on an even number of modes (default:
    the single 50:50 beam splitter, i.e. the Hadamard on 2 modes), and
    ``d`` must equal base_size * 2^k.
    """
    if base is None:
        base = _hadamard_circuit()
    n = base.d
    if n % 2:
        raise ValueError(f"base circuit must have an even mode count, got {n}")
    size = d
    while size > n and size % 2 == 0:
        size //= 2
    if size != n:
        raise ValueError(f"modes must be base*2^k (base {n}), got {d}")
    if d == n:
        return base

    half = qft(d // 2, base)
    m = d // 2
    sigma = shuffle_sigma(m)
    sigma_inv = inverse(sigma)

    layers: list[Layer] = list(sigma_inv.layers)
    layers += _pair_layers(half)
    layers.append(
        Layer(tuple(phase_shifter(m + k + 1, k * math.pi / m) for k in range(1, m)))
    )
    layers += list(sigma.layers)
    layers.append(Layer(tuple(beam_splitter(2 * t + 1) for t in range(m))))
    layers += list(sigma_inv.layers)
    return Circuit(d, tuple(layers))


def v_circuit(d: int) -> Circuit:
    """The unitary V_d (= Hadamard on every doubling level), d = 2^k."""
    _require_power_of_two(d, "v_circuit")
    if d == 2:
        return _hadamard_circuit()
    m = d // 2
    half = v_circuit(m)
    sigma = shuffle_sigma(m)
    layers: list[Layer] = _pair_layers(half)
    layers += list(sigma.layers)
    layers.append(Layer(tuple(beam_splitter(2 * t + 1) for t in range(m))))
    layers += list(inverse(sigma).layers)
    return Circuit(d, tuple(layers))


def phi(d: int) -> Circuit:
    """Swap network on 2d modes exchanging modes 1 and d+1, fixing the rest.

    A diamond of nearest-neighbour swaps: an outer S(d, d+1) on each end
    and a shrink-then-grow sequence of parallel swap layers in between,
    d^2/4 + d/2 + 1 swaps in total.
    """
    _require_power_of_two(d, "phi")
    layers = [Layer((swap(d),))]
    down = []
    for t in range(d // 2):
        count = d // 2 - t
        down.append(Layer(tuple(swap(1 + t + 2 * k) for k in range(count))))
    layers += down
    layers += down[-2::-1]
    layers.append(Layer((swap(d),)))
    return Circuit(2 * d, tuple(layers))


def grover_inversion(d: int) -> Circuit:
    """Grover inversion W_d = 2|psi><psi| - I on d = 2^k modes."""
    _require_power_of_two(d, "grover_inversion")
    if d == 2:
        return Circuit(2, (Layer((swap(1),)),))
    m = d // 2
    w_half = grover_inversion(m)
    v_half = v_circuit(m)
    layers: list[Layer] = _pair_layers(w_half)
    layers += _pair_layers(v_half)
    layers += list(phi(m).layers)
    layers += _pair_layers(v_half)
    return Circuit(d, tuple(layers))


def prep(d: int) -> Circuit:
    """State preparation P_d: basis mode 1 -> uniform superposition.

    Binary tree with swaps: split mode 1 on a 50:50 coupler, walk the
    lower branch down to mode d/2+1, then prepare each half recursively.
    Reconstructed from the element totals N(P_4)=4 and N(P_8)=12.
    """
    _require_power_of_two(d, "prep")
    if d == 2:
        return _hadamard_circuit()
    m = d // 2
    layers: list[Layer] = [Layer((beam_splitter(1),))]
    layers += [Layer((swap(k),)) for k in range(2, m + 1)]
    layers += _pair_layers(prep(m))
    return Circuit(d, tuple(layers))


def oracle(d: int, solution: int) -> Circuit:
    """Search oracle: a single pi-phase shift on the solution mode."""
    if not 1 <= solution <= d:
        raise ValueError(f"solution mode must lie in [1, {d}], got {solution}")
    return Circuit(d, (Layer((phase_shifter(solution, math.pi),)),))


def grover_iterations(d: int) -> int:
    """Number of Grover iterations, floor(pi/4 * sqrt(d))."""
    return int(math.floor(math.pi / 4.0 * math.sqrt(d)))


def grover_search(d: int, solution: int) -> Circuit:
    """Full search circuit: state prep then r x (oracle, inversion)."""
    _require_power_of_two(d, "grover_search")
    parts = [prep(d)]
    inv = grover_inversion(d)
    for _ in range(grover_iterations(d)):
        parts.append(oracle(d, solution))
        parts.append(inv)
    return concat(*parts)


def build(family: str, d: int, solution: int | None = None) -> Circuit:
    """Build any circuit family by name (the CLI/service entry point)."""
    if family == QFT:
        return qft(d)
    if family == SHUFFLE:
        return shuffle_sigma(d)
    if family == V:
        return v_circuit(d)
    if family == W:
        return grover_inversion(d)
    if family == PHI:
        return phi(d)
    if family == PREP:
        return prep(d)
    if family == ORACLE:
        if solution is None:
            raise ValueError("oracle requires a solution mode")
        return oracle(d, solution)
    if family == GROVER_SEARCH:
        if solution is None:
            raise ValueError("grover-search requires a solution mode")
        return grover_search(d, solution)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def count_formula(family: str, d: int) -> int:
    """Closed-form element count N for the qft, v, w and prep families."""
    k = _require_power_of_two(d, f"count_formula({family!r})")
    if family == QFT:
        return (3 * d * d + d * (k - 7)) // 4 + 1
    if family == V:
        return d * (d - 1) // 2
    if family == W:
        return (9 * d * d - d * (6 * k + 4)) // 8 - 1
    if family == PREP:
        return d * k // 2
    raise ValueError(f"no count formula for family {family!r}")


def depth_formula(family: str, d: int) -> int:
    """Closed-form circuit depth D for the qft and w families (d = 2^k)."""
    k = _require_power_of_two(d, f"depth_formula({family!r})")
    if family == QFT:
        return 3 * (d - 1) - 2 * k
    if family == W:
        return 5 * d - 2 * k - k * k - 6
    raise ValueError(f"no depth formula for family {family!r}")
