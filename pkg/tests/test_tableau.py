from __future__ import annotations

import random

import pytest

from majorana_xyz.pauli import PauliWord
from majorana_xyz.simulator import Tableau, apply_pauli, measure_pauli


def P(letters, n=3):
    return PauliWord.from_letters(letters, n)


def test_zero_state_z_deterministic():
    t = Tableau(3)
    r = measure_pauli(t, P({0: "Z"}), random.Random(0))
    assert r.outcome == 1 and r.deterministic
    assert t.check_invariants() == []


def test_repeated_x_measurement():
    rng = random.Random(1)
    t = Tableau(3)
    first = measure_pauli(t, P({0: "X"}), rng)
    assert not first.deterministic
    second = measure_pauli(t, P({0: "X"}), rng)
    assert second.deterministic and second.outcome == first.outcome
    assert t.check_invariants() == []


def test_alternating_anticommuting_measurements_are_fair():
    rng = random.Random(2)
    t = Tableau(1)
    x, z = P({0: "X"}, 1), P({0: "Z"}, 1)
    outcomes = []
    for _ in range(2000):
        r1 = measure_pauli(t, x, rng)
        r2 = measure_pauli(t, z, rng)
        assert not r1.deterministic and not r2.deterministic
        outcomes += [r1.outcome, r2.outcome]
    plus = outcomes.count(1) / len(outcomes)
    assert abs(plus - 0.5) < 3 * (0.25 / len(outcomes)) ** 0.5


def test_apply_pauli_flips_sign():
    rng = random.Random(3)
    t = Tableau(2)
    apply_pauli(t, P({0: "X"}, 2))
    assert measure_pauli(t, P({0: "Z"}, 2), rng).outcome == -1
    assert measure_pauli(t, P({1: "Z"}, 2), rng).outcome == 1
    assert measure_pauli(t, P({0: "Z", 1: "Z"}, 2), rng).outcome == -1


def test_bell_pair_correlations():
    rng = random.Random(4)
    t = Tableau(2)
    measure_pauli(t, P({0: "X", 1: "X"}, 2), rng)
    zz = measure_pauli(t, P({0: "Z", 1: "Z"}, 2), rng)
    assert zz.deterministic and zz.outcome == 1
    yy = measure_pauli(t, P({0: "Y", 1: "Y"}, 2), rng)
    xx = measure_pauli(t, P({0: "X", 1: "X"}, 2), rng)
    # XX * ZZ = -YY
    assert yy.deterministic and yy.outcome == -xx.outcome * zz.outcome


def test_signed_operator_measurement():
    rng = random.Random(5)
    t = Tableau(1)
    r = measure_pauli(t, P({0: "Z"}, 1).scaled(2), rng)
    assert r.deterministic and r.outcome == -1


def test_measure_rejects_bad_operators():
    t = Tableau(2)
    with pytest.raises(ValueError):
        measure_pauli(t, PauliWord.identity(2), random.Random(0))
    with pytest.raises(ValueError):
        measure_pauli(t, P({0: "Z"}, 2).scaled(1), random.Random(0))
    with pytest.raises(ValueError):
        measure_pauli(t, P({0: "Z"}, 3), random.Random(0))


def test_invariants_after_random_measurements():
    rng = random.Random(6)
    n = 5
    t = Tableau(n)
    for _ in range(200):
        p = PauliWord(n, rng.getrandbits(n), rng.getrandbits(n))
        if p.is_identity():
            continue
        measure_pauli(t, p.hermitian() if p.is_hermitian() else p.scaled(1).hermitian(), rng)
    assert t.check_invariants() == []
