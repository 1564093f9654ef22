from __future__ import annotations

import random

import pytest
from oracles import gf2_rank, symplectic_rows

from majorana_xyz.gf2 import (
    OperatorSet,
    centraliser_in_pauli_group,
    centre,
    gram_matrix,
    nullspace,
    rank_of_rows,
    solve_affine,
)
from majorana_xyz.pauli import PauliWord, multiply, symplectic_product


def rand_pauli(rng, n):
    return PauliWord(n, rng.getrandbits(n), rng.getrandbits(n))


def test_rank_against_numpy_oracle():
    rng = random.Random(3)
    for _ in range(20):
        ops = [rand_pauli(rng, 6) for _ in range(rng.randint(1, 14))]
        assert OperatorSet(ops).rank == gf2_rank(symplectic_rows(ops))
        assert rank_of_rows(p.bits for p in ops) == OperatorSet(ops).rank


def test_nullspace_vectors_annihilate_rows():
    rng = random.Random(4)
    rows = [rng.getrandbits(10) for _ in range(6)]
    null = nullspace(rows, 10)
    assert len(null) == 10 - rank_of_rows(rows)
    for v in null:
        assert all((r & v).bit_count() % 2 == 0 for r in rows)
    assert rank_of_rows(null) == len(null)


def test_solve_affine():
    rows = [0b011, 0b110]
    x = solve_affine(rows, [1, 0], 3)
    assert x is not None
    assert [(r & x).bit_count() % 2 for r in rows] == [1, 0]
    assert solve_affine([0b1, 0b1], [0, 1], 1) is None


def test_decompose_round_trip_and_kernel():
    rng = random.Random(5)
    ops = [rand_pauli(rng, 5) for _ in range(12)]
    s = OperatorSet(ops)
    assert len(s.kernel) == len(ops) - s.rank
    for c in s.kernel:
        assert s.product_of(c).is_identity()
    for _ in range(50):
        mask = rng.getrandbits(len(ops))
        target = s.product_of(mask)
        coeffs = s.decompose(target)
        assert coeffs is not None
        assert s.product_of(coeffs).same_pattern(target)


def test_in_span_rejects_outside():
    Z0 = PauliWord.from_letters({0: "Z"}, 2)
    s = OperatorSet([Z0])
    assert s.in_span(Z0.scaled(2))
    assert not s.in_span(PauliWord.from_letters({0: "X"}, 2))
    assert s.decompose(PauliWord.from_letters({1: "Z"}, 2)) is None
    with pytest.raises(ValueError):
        s.in_span(PauliWord(3))


def test_empty_set_needs_n():
    with pytest.raises(ValueError):
        OperatorSet([])
    assert OperatorSet([], 3).rank == 0


def test_gram_matrix_matches_symplectic_product():
    rng = random.Random(6)
    ops = [rand_pauli(rng, 4) for _ in range(7)]
    g = gram_matrix(ops)
    for i in range(7):
        for j in range(7):
            assert (g[i] >> j) & 1 == symplectic_product(ops[i], ops[j])


def test_centre_of_small_group():
    # <X0, Z0, Z1>: centre is <Z1>
    n = 2
    gens = OperatorSet([PauliWord.from_letters(d, n) for d in ({0: "X"}, {0: "Z"}, {1: "Z"})])
    c = centre(gens)
    assert c.rank == 1
    assert c[0].same_pattern(PauliWord.from_letters({1: "Z"}, n))


def test_centraliser_dimension():
    rng = random.Random(7)
    ops = OperatorSet([rand_pauli(rng, 5) for _ in range(4)])
    cent = centraliser_in_pauli_group(ops)
    assert cent.rank == 10 - ops.rank
    for c in cent:
        assert all(c.commutes_with(g) for g in ops)


def test_centre_is_central():
    rng = random.Random(8)
    ops = OperatorSet([rand_pauli(rng, 6) for _ in range(9)])
    for c in centre(ops):
        assert ops.in_span(c)
        assert all(c.commutes_with(g) for g in ops)
        assert all(multiply(c, g).same_pattern(multiply(g, c)) for g in ops)
