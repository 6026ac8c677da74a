import numpy as np
import pytest
from conftest import kron_label, random_state
from hypothesis import given, settings
from hypothesis import strategies as st

from qss513.pauli import (
    PauliString,
    all_pauli_strings,
    gf2_rank,
    pauli_from_matrix,
    symplectic_product,
)

labels = st.text(alphabet="IXYZ", min_size=3, max_size=3)
phases = st.integers(0, 3)


def test_label_parsing_and_printing():
    p = PauliString.from_label("-XYZI")
    assert str(p) == "-XYZI"
    assert p.weight == 3 and p.support == [0, 1, 2]
    assert p.factors() == [("X", 0), ("Y", 1), ("Z", 2)]
    assert str(PauliString.from_label("+iZZ")) == "+iZZ"
    assert PauliString.from_label("IXI") == PauliString.single(3, 1, "X")
    with pytest.raises(ValueError):
        PauliString.from_label("XQ")


@pytest.mark.parametrize("label", ["+XZZXI", "-IYXXY", "+YYIIZ", "-ZIIII"])
def test_matrix_matches_kron_oracle(label):
    assert np.allclose(PauliString.from_label(label).matrix(), kron_label(label))


@settings(max_examples=60, deadline=None)
@given(labels, phases, labels, phases)
def test_product_matches_matrix_product(a, pa, b, pb):
    p, q = PauliString.from_label(a), PauliString.from_label(b)
    p = PauliString(p.xs, p.zs, pa)
    q = PauliString(q.xs, q.zs, pb)
    assert np.allclose((p * q).matrix(), p.matrix() @ q.matrix())


@settings(max_examples=60, deadline=None)
@given(labels, labels)
def test_commutation_matches_matrices(a, b):
    p, q = PauliString.from_label(a), PauliString.from_label(b)
    pm, qm = kron_label(a), kron_label(b)
    commute = np.allclose(pm @ qm, qm @ pm)
    assert p.commutes_with(q) == commute
    assert symplectic_product(p, q) == (0 if commute else 1)


@settings(max_examples=40, deadline=None)
@given(labels, phases)
def test_apply_to_matches_matrix(a, phase):
    p = PauliString.from_label(a)
    p = PauliString(p.xs, p.zs, phase)
    v = random_state(np.random.default_rng(len(a) + phase), 3)
    assert np.allclose(p.apply_to(v), p.matrix() @ v)


def test_hermitian_squares_to_identity():
    for p in all_pauli_strings(2):
        assert p.is_hermitian()
        assert p * p == PauliString.identity(2)
        assert (-p) * (-p) == PauliString.identity(2)


def test_all_pauli_strings_count():
    assert len(list(all_pauli_strings(3))) == 64


def test_pauli_from_matrix_identifies_phase():
    for label in ["-XYZ", "+iIZX", "-iYYY", "+III"]:
        p = PauliString.from_label(label)
        assert pauli_from_matrix(p.matrix()) == p
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert pauli_from_matrix(h) is None
    assert pauli_from_matrix(np.diag([1, 1j])) is None


def test_gf2_rank():
    assert gf2_rank([[1, 0, 1], [0, 1, 1], [1, 1, 0]]) == 2
    assert gf2_rank(np.eye(4, dtype=int)) == 4
    assert gf2_rank([]) == 0
