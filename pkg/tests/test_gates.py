import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinxor.gates import (GateError, GateSpec, bits_of, canonical_xor_unitary, column_leakage, index_of,
                           induced_map, verify_gate, xor_gate_spec)
from spinxor.linalg import unitary_exponential
from spinxor.pauli import assemble, relabel, xor_hamiltonian

ABC = ["111", "110", "101", "100", "011", "010", "001", "000"]


def test_index_of_listed_order():
    assert index_of((1, 1, 1)) == 0
    assert index_of((0, 0, 0)) == 7
    assert index_of((1, 0, 1)) == 2
    for k, label in enumerate(ABC):
        assert index_of(tuple(int(c) for c in label)) == k


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_index_bits_bijection(n):
    seen = set()
    for k in range(2 ** n):
        bits = bits_of(k, n)
        assert index_of(bits) == k
        seen.add(bits)
    assert seen == set(itertools.product((0, 1), repeat=n))


def test_index_out_of_range():
    with pytest.raises(ValueError):
        bits_of(8, 3)
    with pytest.raises(ValueError):
        index_of((1, 2))


def test_xor_spec_table():
    spec = xor_gate_spec()
    assert spec(1, 1) == 0 and spec(1, 0) == 1 and spec(0, 1) == 1 and spec(0, 0) == 0
    assert spec.input_sites == (0, 1) and spec.output_site == 2


def test_spec_validation():
    with pytest.raises(GateError):
        GateSpec({(0,): 1}, (0,), 1)
    with pytest.raises(GateError):
        GateSpec.from_function(lambda a, b: a ^ b, (0, 1), 1)


def test_canonical_unitary_entries():
    u = canonical_xor_unitary()
    assert u[1, 0] == 1
    assert u[0, 2] == -1
    assert np.count_nonzero(u[:, 0]) == 1
    assert set(np.unique(u.real)) == {-1, 0, 1}
    assert np.all(u.imag == 0)


def test_verify_reference_unitary():
    report = verify_gate(canonical_xor_unitary(), xor_gate_spec(), 1e-10)
    assert report.passed
    assert report.max_leakage == 0


def test_verify_identity_fails_on_wrong_states():
    report = verify_gate(np.eye(8), xor_gate_spec())
    assert not report.passed
    for k, leak in enumerate(report.column_leakage):
        a, b, c = bits_of(k, 3)
        assert leak == (1.0 if c != a ^ b else 0.0)


def test_verify_relabeled_hamiltonian():
    h = relabel(xor_hamiltonian(), [1, 0, 2])
    assert verify_gate(unitary_exponential(assemble(h)), xor_gate_spec()).passed


def test_verify_rejects_non_unitary():
    with pytest.raises(GateError):
        verify_gate(2 * np.eye(8), xor_gate_spec())
    with pytest.raises(GateError):
        verify_gate(np.eye(6), xor_gate_spec())
    with pytest.raises(GateError):
        verify_gate(np.eye(4), xor_gate_spec())


def test_induced_map_of_reference():
    sp = induced_map(canonical_xor_unitary())
    expected = {
        "111": ("110", 1), "110": ("100", 1), "101": ("111", -1), "100": ("101", 1),
        "011": ("001", -1), "010": ("011", -1), "001": ("000", -1), "000": ("010", 1),
    }
    for src, (dst, sign) in expected.items():
        j = ABC.index(src)
        assert sp.image[j] == ABC.index(dst)
        assert sp.phase[j] == sign
    assert sorted(sp.image) == list(range(8))
    for j in range(8):
        a, b, _ = bits_of(j, 3)
        assert bits_of(sp.image[j], 3)[2] == a ^ b
    assert np.array_equal(sp.as_matrix(), canonical_xor_unitary())


def test_induced_map_identity_and_hadamard():
    sp = induced_map(np.eye(8))
    assert sp.image == tuple(range(8)) and all(p == 1 for p in sp.phase)
    hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert induced_map(hadamard) is None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 2 * np.pi), min_size=8, max_size=8))
def test_phases_do_not_change_leakage(angles):
    d = np.diag(np.exp(1j * np.array(angles)))
    u = canonical_xor_unitary()
    base = column_leakage(u, xor_gate_spec())
    assert np.abs(column_leakage(u @ d, xor_gate_spec()) - base).max() <= 1e-12
    assert np.abs(column_leakage(d @ u, xor_gate_spec()) - base).max() <= 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_leakage_is_a_probability(seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
    report = verify_gate(q, xor_gate_spec())
    assert all(0 <= x <= 1 + 1e-12 for x in report.column_leakage)
    assert report.passed == (report.max_leakage <= report.tolerance)
