import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinxor.pauli import (Hamiltonian, PauliLabel, PauliTerm, SpinSystem, assemble, embed_term,
                           single_pauli, term, xor_hamiltonian)

XYZ = [PauliLabel.X, PauliLabel.Y, PauliLabel.Z]


def test_single_pauli_constants():
    assert np.array_equal(single_pauli("Z"), [[1, 0], [0, -1]])
    assert np.array_equal(single_pauli("I"), np.eye(2))
    assert np.array_equal(single_pauli("Y"), [[0, -1j], [1j, 0]])
    assert np.array_equal(single_pauli("X"), [[0, 1], [1, 0]])


@pytest.mark.parametrize("label", XYZ)
def test_pauli_square_and_trace(label):
    p = single_pauli(label)
    assert np.array_equal(p @ p, np.eye(2))
    assert np.trace(p) == 0


def test_pauli_products_are_cyclic():
    x, y, z = (single_pauli(k) for k in "XYZ")
    assert np.array_equal(x @ y, 1j * z)
    assert np.array_equal(y @ z, 1j * x)
    assert np.array_equal(z @ x, 1j * y)


def test_single_pauli_returns_copy():
    m = single_pauli("X")
    m[0, 0] = 7
    assert single_pauli("X")[0, 0] == 0


def test_embed_z_on_first_of_two():
    m = embed_term(PauliTerm(1.0, {0: "Z"}), SpinSystem.of_size(2))
    assert np.array_equal(m, np.diag([1, 1, -1, -1]))


def test_embed_zy_identity_matches_hand_expansion():
    m = embed_term(PauliTerm(1.0, {0: "Z", 1: "Y"}), SpinSystem.of_size(3))
    # sigma_z (x) sigma_y (x) I written out by hand: the z sign flips the
    # lower 4x4 block, sigma_y (x) I places -i / +i two rows off the diagonal.
    expected = np.zeros((8, 8), dtype=complex)
    for block, sign in ((0, 1), (4, -1)):
        for k in range(2):
            expected[block + k, block + 2 + k] = -1j * sign
            expected[block + 2 + k, block + k] = 1j * sign
    assert np.array_equal(m, expected)
    assert m[0, 2] == -1j and m[2, 0] == 1j


def test_embed_scaled_x():
    m = embed_term(PauliTerm(2.5, {0: "X"}), SpinSystem.of_size(1))
    assert np.array_equal(m, [[0, 2.5], [2.5, 0]])


def test_embed_site_out_of_range():
    with pytest.raises(IndexError):
        embed_term(PauliTerm(1.0, {3: "X"}), SpinSystem.of_size(3))


def test_term_validation():
    with pytest.raises(ValueError):
        PauliTerm(1.0, {})
    with pytest.raises(ValueError):
        PauliTerm(1.0, [(0, "X"), (0, "Z")])
    with pytest.raises(ValueError):
        PauliTerm(1.0, {0: "I"})
    with pytest.raises(ValueError):
        PauliTerm(float("nan"), {0: "X"})
    with pytest.raises(ValueError):
        SpinSystem(("A", "A"))


def test_assemble_empty_and_single():
    assert np.array_equal(assemble(Hamiltonian(SpinSystem.of_size(3))), np.zeros((8, 8)))
    h = Hamiltonian(SpinSystem.of_size(1), (PauliTerm(1.0, {0: "Z"}),))
    assert np.array_equal(assemble(h), [[1, 0], [0, -1]])


def test_xor_hamiltonian_coefficients():
    # pi*sqrt(2)/4 and pi/4, evaluated with mpmath at 30 digits.
    coeffs = [t.coefficient for t in xor_hamiltonian().terms]
    assert coeffs == pytest.approx([1.1107207345, 1.1107207345, -0.7853981634], abs=1e-10)


def test_xor_hamiltonian_structure():
    h = xor_hamiltonian()
    assert h.max_interaction_order == 2
    assert frozenset({0, 2}) not in h.interaction_pairs()
    assert h.interaction_pairs() == {frozenset({0, 1}), frozenset({1, 2})}
    assert h.is_loopless()
    m = assemble(h)
    assert np.allclose(m, m.conj().T, atol=1e-15, rtol=0)
    assert np.abs(np.diag(m)).max() <= 1e-15


def test_loop_detection():
    abc = SpinSystem.of_size(3)
    h = Hamiltonian(abc, (term(1, "xA xB", abc), term(1, "xB xC", abc), term(1, "zA zC", abc)))
    assert not h.is_loopless()


@st.composite
def hamiltonians(draw, max_sites=4, max_terms=6):
    n = draw(st.integers(1, max_sites))
    system = SpinSystem.of_size(n)
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        sites = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=min(n, 2), unique=True))
        labels = draw(st.lists(st.sampled_from(XYZ), min_size=len(sites), max_size=len(sites)))
        coeff = draw(st.floats(-5, 5, allow_nan=False))
        terms.append(PauliTerm(coeff, list(zip(sites, labels))))
    return Hamiltonian(system, tuple(terms))


@settings(max_examples=100, deadline=None)
@given(hamiltonians())
def test_assembled_matrix_is_hermitian(h):
    m = assemble(h)
    assert m.shape == (h.system.dim, h.system.dim)
    scale = max(1.0, np.linalg.norm(m))
    assert np.linalg.norm(m - m.conj().T) <= 1e-14 * scale


@settings(max_examples=50, deadline=None)
@given(hamiltonians(), st.randoms(use_true_random=False))
def test_assemble_ignores_term_order(h, random):
    shuffled = list(h.terms)
    random.shuffle(shuffled)
    other = Hamiltonian(h.system, tuple(shuffled))
    assert np.allclose(assemble(h), assemble(other), atol=1e-15 * max(1, len(h.terms)) * 5, rtol=0)
