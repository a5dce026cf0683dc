import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiport.circuit import (
    Circuit,
    Element,
    Layer,
    apply,
    beam_splitter,
    circuit_matrix,
    concat,
    depth,
    element_block,
    element_count,
    empty_circuit,
    inverse,
    is_lossless,
    phase_shifter,
    swap,
)


def _elements(draw, d):
    kind = draw(st.sampled_from(["bs", "swap", "ps"]))
    if kind == "ps":
        mode = draw(st.integers(1, d))
        return phase_shifter(mode, draw(st.floats(-math.pi, math.pi)),
                             loss=draw(st.floats(0.0, 0.5)))
    mode = draw(st.integers(1, d - 1))
    if kind == "bs":
        return beam_splitter(mode, draw(st.floats(0.0, 1.0)))
    return swap(mode, draw(st.floats(0.0, 0.2)))


@st.composite
def circuits(draw, lossless=False):
    d = draw(st.integers(2, 16))
    layers = []
    for _ in range(draw(st.integers(0, 6))):
        used: set[int] = set()
        chosen = []
        for _ in range(draw(st.integers(1, d))):
            e = _elements(draw, d)
            if lossless and e.kind == "phase_shifter" and e.loss:
                e = phase_shifter(e.modes[0], e.phase)
            if set(e.modes) & used:
                continue
            used.update(e.modes)
            chosen.append(e)
        if chosen:
            layers.append(Layer(tuple(chosen)))
    return Circuit(d, tuple(layers))


class TestElementValidation:
    def test_non_adjacent_modes_rejected(self):
        with pytest.raises(ValueError):
            Element("beam_splitter", (1, 3), reflectivity=0.5)

    def test_zero_based_modes_rejected(self):
        with pytest.raises(ValueError):
            Element("swap", (0, 1))

    def test_descending_modes_rejected(self):
        with pytest.raises(ValueError):
            Element("beam_splitter", (2, 1), reflectivity=0.5)

    def test_reflectivity_out_of_range(self):
        with pytest.raises(ValueError):
            beam_splitter(1, reflectivity=1.2)

    def test_loss_only_on_phase_shifters(self):
        with pytest.raises(ValueError):
            Element("swap", (1, 2), loss=0.1)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            Element("mirror", (1, 2))

    def test_layer_mode_collision(self):
        with pytest.raises(ValueError):
            Layer((beam_splitter(1), beam_splitter(2)))

    def test_element_exceeding_circuit(self):
        with pytest.raises(ValueError):
            Circuit(2, (Layer((beam_splitter(2),)),))


class TestElementBlock:
    def test_balanced_beam_splitter(self):
        block = element_block(beam_splitter(1, 0.5))
        h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        assert np.allclose(block, h)

    def test_swap_is_zero_reflectivity(self):
        block = element_block(swap(1))
        assert np.allclose(block, [[0, 1], [1, 0]])

    def test_full_reflectivity_is_diagonal(self):
        block = element_block(beam_splitter(1, 1.0))
        assert np.allclose(block, [[1, 0], [0, -1]])

    def test_phase_shifter_scalar(self):
        block = element_block(phase_shifter(1, math.pi / 2, loss=0.19))
        assert block.shape == (1, 1)
        assert np.isclose(block[0, 0], 1j * math.sqrt(0.81))


class TestCircuitMatrix:
    def test_empty_circuit_is_identity(self):
        assert np.array_equal(circuit_matrix(empty_circuit(3)), np.eye(3))

    def test_single_swap(self):
        c = Circuit(3, (Layer((swap(2),)),))
        m = circuit_matrix(c)
        expected = np.eye(3)[:, [0, 2, 1]]
        assert np.allclose(m, expected)

    def test_layers_compose_right_to_left(self):
        c = Circuit(2, (Layer((phase_shifter(1, math.pi),)),
                        Layer((beam_splitter(1),))))
        first = circuit_matrix(Circuit(2, (c.layers[0],)))
        second = circuit_matrix(Circuit(2, (c.layers[1],)))
        assert np.allclose(circuit_matrix(c), second @ first)

    @given(circuits(lossless=True))
    @settings(max_examples=40, deadline=None)
    def test_lossless_circuits_are_unitary(self, c):
        m = circuit_matrix(c)
        assert np.max(np.abs(m.conj().T @ m - np.eye(c.d))) <= 1e-12

    @given(circuits())
    @settings(max_examples=40, deadline=None)
    def test_lossy_circuits_are_contractions(self, c):
        singular = np.linalg.svd(circuit_matrix(c), compute_uv=False)
        assert np.all(singular <= 1 + 1e-12)


class TestApply:
    @given(circuits(), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_apply_matches_matrix_product(self, c, seed):
        rng = np.random.default_rng(seed)
        v = rng.normal(size=c.d) + 1j * rng.normal(size=c.d)
        assert np.max(np.abs(apply(c, v) - circuit_matrix(c) @ v)) <= 1e-12

    def test_apply_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            apply(empty_circuit(3), np.ones(4))


class TestStructure:
    def test_element_count_additive_over_concat(self):
        a = Circuit(4, (Layer((beam_splitter(1), swap(3))),))
        b = Circuit(4, (Layer((phase_shifter(2, 0.3),)),))
        assert element_count(concat(a, b)) == element_count(a) + element_count(b)

    def test_concat_requires_matching_modes(self):
        with pytest.raises(ValueError):
            concat(empty_circuit(2), empty_circuit(3))

    def test_single_element_depth_is_one(self):
        assert depth(Circuit(2, (Layer((beam_splitter(1),)),))) == 1

    def test_phase_layer_absorbs_into_adjacent_column(self):
        c = Circuit(3, (Layer((beam_splitter(1),)),
                        Layer((phase_shifter(3, 0.5),)),
                        Layer((beam_splitter(1),))))
        assert depth(c) == 2

    def test_blocked_phase_layer_needs_own_column(self):
        c = Circuit(2, (Layer((beam_splitter(1),)),
                        Layer((phase_shifter(1, 0.5),)),
                        Layer((beam_splitter(1),))))
        assert depth(c) == 3

    @given(circuits())
    @settings(max_examples=40, deadline=None)
    def test_depth_at_most_layer_count(self, c):
        assert depth(c) <= len(c.layers)

    def test_is_lossless(self):
        assert is_lossless(Circuit(2, (Layer((phase_shifter(1, 0.1),)),)))
        assert not is_lossless(Circuit(2, (Layer((phase_shifter(1, 0.1, loss=0.02),)),)))


class TestInverse:
    @given(circuits(lossless=True))
    @settings(max_examples=40, deadline=None)
    def test_inverse_composes_to_identity(self, c):
        m = circuit_matrix(concat(c, inverse(c)))
        assert np.max(np.abs(m - np.eye(c.d))) <= 1e-12

    def test_inverse_rejects_lossy_circuits(self):
        c = Circuit(2, (Layer((phase_shifter(1, 0.1, loss=0.05),)),))
        with pytest.raises(ValueError):
            inverse(c)
