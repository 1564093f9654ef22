from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majorana_xyz.pauli import PauliWord, multiply, product, symplectic_product

N = 9


@st.composite
def paulis(draw, n=N):
    return PauliWord(n, draw(st.integers(0, 2**n - 1)), draw(st.integers(0, 2**n - 1)), draw(st.integers(0, 3)))


def test_single_qubit_table():
    X = PauliWord.from_letters({0: "X"}, 1)
    Y = PauliWord.from_letters({0: "Y"}, 1)
    Z = PauliWord.from_letters({0: "Z"}, 1)
    assert multiply(X, Y) == Z.scaled(1)
    assert multiply(Y, Z) == X.scaled(1)
    assert multiply(Z, X) == Y.scaled(1)
    assert multiply(Y, X) == Z.scaled(3)
    for p in (X, Y, Z):
        assert multiply(p, p) == PauliWord.identity(1)


def test_text_round_trip():
    p = PauliWord.from_letters({0: "X", 4: "Y", 7: "Z"}, 9, phase=1)
    assert p.to_text() == "+i X0 Y4 Z7"
    assert PauliWord.from_text(p.to_text(), 9) == p
    assert PauliWord.identity(3).to_text() == "+ I"
    assert PauliWord.from_text("- I", 3) == PauliWord(3, phase=2)
    for bad in ("X0", "+ X0 X0", "+ Q1", "+ X12"):
        with pytest.raises(ValueError):
            PauliWord.from_text(bad, 9)


def test_bad_inputs():
    with pytest.raises(ValueError):
        PauliWord(2, x=4)
    with pytest.raises(ValueError):
        PauliWord.from_letters({0: "W"}, 2)
    with pytest.raises(ValueError):
        multiply(PauliWord(2), PauliWord(3))
    with pytest.raises(ValueError):
        symplectic_product(PauliWord(2), PauliWord(3))


def test_weight_and_support():
    p = PauliWord.from_letters({1: "X", 3: "Y", 6: "Z"}, 8)
    assert p.weight == 3
    assert p.support == [1, 3, 6]
    assert p.letters() == {1: "X", 3: "Y", 6: "Z"}


@settings(max_examples=300, deadline=None)
@given(paulis(), paulis())
def test_symplectic_symmetric(p, q):
    assert symplectic_product(p, q) == symplectic_product(q, p)


@settings(max_examples=300, deadline=None)
@given(paulis(), paulis(), paulis())
def test_symplectic_bilinear(p, q, r):
    assert symplectic_product(multiply(p, q), r) == symplectic_product(p, r) ^ symplectic_product(q, r)


@settings(max_examples=300, deadline=None)
@given(paulis(), paulis(), paulis())
def test_multiplication_associative(p, q, r):
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


@settings(max_examples=300, deadline=None)
@given(paulis(), paulis())
def test_commutation_phase(p, q):
    pq, qp = multiply(p, q), multiply(q, p)
    assert pq.same_pattern(qp)
    assert (pq.phase - qp.phase) % 4 == 2 * symplectic_product(p, q)


@settings(max_examples=200, deadline=None)
@given(paulis())
def test_hermitian_square_is_identity(p):
    h = p.hermitian()
    assert multiply(h, h) == PauliWord.identity(N)


def test_product_is_ordered():
    ws = [PauliWord.from_letters({0: a}, 1) for a in "XYZ"]
    assert product(ws, 1) == PauliWord.identity(1).scaled(1)  # XYZ = i
    assert product(reversed(ws), 1) == PauliWord.identity(1).scaled(3)
