"""Layered multiport photonic circuits and their transfer matrices.

A circuit on ``d`` modes is an ordered list of layers, each holding
optical elements with pairwise-disjoint mode support. Layers are applied
first to last, so the compiled transfer matrix is the product of the
layer matrices in reverse order. Mode indices are 1-based, matching the
usual top-to-bottom labelling of waveguides, and two-mode elements only
couple adjacent modes (the planar-chip restriction).

Everything here is immutable and side-effect free, so circuits and
matrices can be shared freely across worker threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

BEAM_SPLITTER = "beam_splitter"
SWAP = "swap"
PHASE_SHIFTER = "phase_shifter"

_TWO_MODE_KINDS = (BEAM_SPLITTER, SWAP)


@dataclass(frozen=True)
class Element:
    """A single optical primitive on one mode or two adjacent modes.

    ``reflectivity`` belongs to beam splitters and swaps (a swap is a
    beam splitter with reflectivity 0; it is a separate kind only because
    fabrication noise treats it differently). ``phase`` and ``loss``
    belong to phase shifters.
    """

    kind: str
    modes: tuple[int, ...]
    reflectivity: float = 0.0
    phase: float = 0.0
    loss: float = 0.0

    def __post_init__(self) -> None:
        if self.kind in _TWO_MODE_KINDS:
            if len(self.modes) != 2:
                raise ValueError(f"{self.kind} needs two modes, got {self.modes}")
            i, j = self.modes
            if i < 1:
                raise ValueError(f"mode indices are 1-based, got {self.modes}")
            if j <= i:
                raise ValueError(f"modes must satisfy i < j, got {self.modes}")
            if j != i + 1:
                raise ValueError(
                    f"two-mode elements must couple adjacent modes, got {self.modes}"
                )
            if not 0.0 <= self.reflectivity <= 1.0:
                raise ValueError(f"reflectivity must lie in [0, 1], got {self.reflectivity}")
            if self.loss != 0.0:
                raise ValueError("loss is only modelled on phase shifters")
        elif self.kind == PHASE_SHIFTER:
            if len(self.modes) != 1 or self.modes[0] < 1:
                raise ValueError(f"phase shifter needs one 1-based mode, got {self.modes}")
            if not 0.0 <= self.loss <= 1.0:
                raise ValueError(f"loss must lie in [0, 1], got {self.loss}")
            if self.reflectivity != 0.0:
                raise ValueError("phase shifters have no reflectivity")
        else:
            raise ValueError(f"unknown element kind {self.kind!r}")


def beam_splitter(mode: int, reflectivity: float = 0.5) -> Element:
    """Beam splitter on modes (mode, mode+1); default is the 50:50 coupler."""
    return Element(BEAM_SPLITTER, (mode, mode + 1), reflectivity=reflectivity)


def swap(mode: int, reflectivity: float = 0.0) -> Element:
    """Swap on modes (mode, mode+1): a beam splitter with zero reflectivity."""
    return Element(SWAP, (mode, mode + 1), reflectivity=reflectivity)


def phase_shifter(mode: int, phase: float, loss: float = 0.0) -> Element:
    """Phase shifter multiplying mode's amplitude by e^{i phase} sqrt(1-loss)."""
    return Element(PHASE_SHIFTER, (mode,), phase=phase, loss=loss)


@dataclass(frozen=True)
class Layer:
    """A group of elements that act in parallel (disjoint mode support)."""

    elements: tuple[Element, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for e in self.elements:
            for m in e.modes:
                if m in seen:
                    raise ValueError(f"mode {m} used twice within one layer")
                seen.add(m)


@dataclass(frozen=True)
class Circuit:
    """An ordered sequence of layers on ``d`` modes, first-applied first."""

    d: int
    layers: tuple[Layer, ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"mode count must be positive, got {self.d}")
        for layer in self.layers:
            for e in layer.elements:
                if max(e.modes) > self.d:
                    raise ValueError(
                        f"element on modes {e.modes} exceeds circuit size {self.d}"
                    )

    def elements(self):
        """All elements in application order."""
        for layer in self.layers:
            yield from layer.elements


def empty_circuit(d: int) -> Circuit:
    return Circuit(d, ())


def element_block(e: Element) -> np.ndarray:
    """The 2x2 (couplers) or 1x1 (phase shifters) complex block of an element."""
    if e.kind == PHASE_SHIFTER:
        return np.array([[np.exp(1j * e.phase) * math.sqrt(1.0 - e.loss)]])
    r = math.sqrt(e.reflectivity)
    t = math.sqrt(1.0 - e.reflectivity)
    return np.array([[r, t], [t, -r]], dtype=complex)


def circuit_matrix(c: Circuit) -> np.ndarray:
    """Compile a circuit to its d x d complex transfer matrix.

    The matrix is built by streaming each element's block through an
    identity, so the result equals M_L ... M_2 M_1 with layer 1 applied
    first. Output state = matrix @ input amplitude vector.
    """
    m = np.eye(c.d, dtype=complex)
    for e in c.elements():
        if e.kind == PHASE_SHIFTER:
            i = e.modes[0] - 1
            m[i, :] *= np.exp(1j * e.phase) * math.sqrt(1.0 - e.loss)
        else:
            i, j = e.modes[0] - 1, e.modes[1] - 1
            r = math.sqrt(e.reflectivity)
            t = math.sqrt(1.0 - e.reflectivity)
            a = m[i, :].copy()
            b = m[j, :]
            m[i, :] = r * a + t * b
            m[j, :] = t * a - r * b
    return m


def apply(c: Circuit, v: np.ndarray) -> np.ndarray:
    """Apply a circuit to an amplitude vector by streaming block updates.

    Equivalent to ``circuit_matrix(c) @ v`` but never materializes the
    full matrix, which matters for Monte Carlo throughput.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (c.d,):
        raise ValueError(f"state has shape {v.shape}, circuit expects ({c.d},)")
    out = v.copy()
    for e in c.elements():
        if e.kind == PHASE_SHIFTER:
            i = e.modes[0] - 1
            out[i] *= np.exp(1j * e.phase) * math.sqrt(1.0 - e.loss)
        else:
            i, j = e.modes[0] - 1, e.modes[1] - 1
            r = math.sqrt(e.reflectivity)
            t = math.sqrt(1.0 - e.reflectivity)
            a = out[i]
            b = out[j]
            out[i] = r * a + t * b
            out[j] = t * a - r * b
    return out


def element_count(c: Circuit) -> int:
    """Total number of optical elements across all layers."""
    return sum(len(layer.elements) for layer in c.layers)


def depth(c: Circuit) -> int:
    """Circuit depth: the number of element columns in the physical layout.

    A layer holding only phase shifters is absorbed into a neighbouring
    column whenever mode support allows: a thermo-optic shifter extends a
    waveguide segment instead of adding a coupler column. The result is
    at most the number of layers.
    """
    columns: list[set[int]] = []
    pending: set[int] | None = None
    for layer in c.layers:
        modes = {m for e in layer.elements for m in e.modes}
        if all(e.kind == PHASE_SHIFTER for e in layer.elements):
            if columns and columns[-1].isdisjoint(modes):
                columns[-1] |= modes
            elif pending is None:
                pending = modes
            elif pending.isdisjoint(modes):
                pending |= modes
            else:
                columns.append(pending)
                pending = modes
            continue
        if pending is not None:
            if pending.isdisjoint(modes):
                modes = modes | pending
            else:
                columns.append(pending)
            pending = None
        columns.append(modes)
    if pending is not None:
        columns.append(pending)
    return len(columns)


def is_lossless(c: Circuit) -> bool:
    return all(e.loss == 0.0 for e in c.elements())


def inverse(c: Circuit) -> Circuit:
    """Inverse circuit: layers reversed, phase shifter angles negated.

    Beam splitter and swap blocks are real, symmetric and involutive
    under the fixed phase convention, so they are kept as-is. Lossy
    circuits have no inverse.
    """
    if not is_lossless(c):
        raise ValueError("lossy circuits are not invertible")
    inv_layers = []
    for layer in reversed(c.layers):
        inv_layers.append(
            Layer(
                tuple(
                    replace(e, phase=-e.phase) if e.kind == PHASE_SHIFTER else e
                    for e in layer.elements
                )
            )
        )
    return Circuit(c.d, tuple(inv_layers))


def concat(*circuits: Circuit) -> Circuit:
    """Concatenate circuits on the same mode count, in application order."""
    if not circuits:
        raise ValueError("need at least one circuit")
    d = circuits[0].d
    layers: list[Layer] = []
    for c in circuits:
        if c.d != d:
            raise ValueError(f"mode count mismatch: {c.d} != {d}")
        layers.extend(c.layers)
    return Circuit(d, tuple(layers))
