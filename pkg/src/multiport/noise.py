"""Fabrication-noise model for silicon photonic multiport circuits.

Two error sources are modelled: incorrect reflectivities in the
couplers, and absorption loss in the thermo-optic phase shifters.

- Beam splitters draw their reflectivity from a Gaussian centred on the
  ideal 50:50 ratio (clamped to [0, 1]; out-of-range draws are
  astronomically rare at the default parameters).
- Swaps draw from a rectified Gaussian near zero: they need no real
  mode interaction and fabricate slightly better than beam splitters.
- Phase shifters keep their angle but gain an absorptivity drawn from a
  rectified Gaussian; loss scales the mode's amplitude by sqrt(1-gamma).

Every element draws independently on each call, i.e. each Monte Carlo
trial sees a freshly fabricated chip. Draw order is fixed and documented
in :func:`sample_noise` so that scalar and vectorised simulation paths
consume identical random streams.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .circuit import BEAM_SPLITTER, PHASE_SHIFTER, SWAP, Circuit, Layer


@dataclass(frozen=True)
class NoiseParams:
    """Distribution parameters of the fabrication model."""

    bs_mean: float = 0.5
    bs_std: float = 0.04
    swap_mean: float = 0.02
    swap_std: float = 0.02
    loss_mean: float = 0.05
    loss_std: float = 0.025

    def __post_init__(self) -> None:
        for name in ("bs_std", "swap_std", "loss_std"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("bs_mean", "swap_mean", "loss_mean"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    @classmethod
    def noiseless(cls) -> "NoiseParams":
        """Degenerate parameters under which realization is the identity."""
        return cls(bs_mean=0.5, bs_std=0.0, swap_mean=0.0, swap_std=0.0,
                   loss_mean=0.0, loss_std=0.0)


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """The private random stream of one trial.

    Counter-based: the Philox counter is offset by the trial index, so
    the stream is a pure function of (master seed, trial index) and is
    identical no matter which worker runs the trial or in what order.
    """
    if trial_index < 0:
        raise ValueError("trial index must be non-negative")
    return np.random.Generator(
        np.random.Philox(key=master_seed, counter=trial_index << 128)
    )


def rectified_gaussian(mean, std, rng: np.random.Generator, size=None):
    """max(0, X) for X ~ Normal(mean, std^2); scalar when size is None."""
    return np.maximum(0.0, rng.normal(mean, std, size))


@dataclass(frozen=True)
class NoiseDraws:
    """Per-element fabrication draws for one realization of a circuit.

    Arrays are indexed by element order within kind: entry k belongs to
    the k-th beam splitter (resp. swap, phase shifter) in circuit order.
    """

    bs_reflectivity: np.ndarray
    swap_reflectivity: np.ndarray
    shifter_loss: np.ndarray


def element_kind_counts(c: Circuit) -> tuple[int, int, int]:
    """(beam splitters, swaps, phase shifters) in a circuit."""
    n_bs = n_swap = n_ps = 0
    for e in c.elements():
        if e.kind == BEAM_SPLITTER:
            n_bs += 1
        elif e.kind == SWAP:
            n_swap += 1
        else:
            n_ps += 1
    return n_bs, n_swap, n_ps


def sample_noise(counts: tuple[int, int, int], params: NoiseParams,
                 rng: np.random.Generator) -> NoiseDraws:
    """Draw one fabrication realization for the given element counts.

    Draw order is fixed: all beam-splitter reflectivities, then all swap
    reflectivities, then all shifter losses, each as one vector draw.
    """
    n_bs, n_swap, n_ps = counts
    bs = np.clip(rng.normal(params.bs_mean, params.bs_std, n_bs), 0.0, 1.0)
    sw = np.minimum(rectified_gaussian(params.swap_mean, params.swap_std, rng, n_swap), 1.0)
    loss = np.minimum(rectified_gaussian(params.loss_mean, params.loss_std, rng, n_ps), 1.0)
    return NoiseDraws(bs, sw, loss)


def realize(c: Circuit, params: NoiseParams, rng: np.random.Generator) -> Circuit:
    """A fabrication-imperfect copy of ``c``.

    Structure (layers, kinds, modes, phases) is preserved; only
    reflectivities and losses change per the noise distributions.
    """
    draws = sample_noise(element_kind_counts(c), params, rng)
    i_bs = i_swap = i_ps = 0
    layers = []
    for layer in c.layers:
        elements = []
        for e in layer.elements:
            if e.kind == BEAM_SPLITTER:
                elements.append(replace(e, reflectivity=float(draws.bs_reflectivity[i_bs])))
                i_bs += 1
            elif e.kind == SWAP:
                elements.append(replace(e, reflectivity=float(draws.swap_reflectivity[i_swap])))
                i_swap += 1
            else:
                elements.append(replace(e, loss=float(draws.shifter_loss[i_ps])))
                i_ps += 1
        layers.append(Layer(tuple(elements)))
    return Circuit(c.d, tuple(layers))
