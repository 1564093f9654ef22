"""Stabiliser tableau with arbitrary Pauli measurement.

Rows ``0..n-1`` are destabilisers and ``n..2n-1`` stabilisers, stored as
:class:`PauliWord` so signs ride along in the phase (0 for +1, 2 for -1).
The update rules are the usual Aaronson-Gottesman ones generalised from
single-qubit Z to any Hermitian Pauli.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..pauli import PauliWord, multiply, symplectic_product


@dataclass(frozen=True)
class MeasurementResult:
    outcome: int  # +1 or -1
    deterministic: bool


class Tableau:
    def __init__(self, n: int) -> None:
        """The all-zeros state: stabilisers Z_j, destabilisers X_j."""
        self.n = n
        self.rows: list[PauliWord] = [PauliWord(n, 1 << j, 0) for j in range(n)]
        self.rows += [PauliWord(n, 0, 1 << j) for j in range(n)]

    def copy(self) -> "Tableau":
        t = Tableau.__new__(Tableau)
        t.n = self.n
        t.rows = list(self.rows)
        return t

    @property
    def stabilisers(self) -> list[PauliWord]:
        return self.rows[self.n :]

    @property
    def destabilisers(self) -> list[PauliWord]:
        return self.rows[: self.n]

    def check_invariants(self) -> list[str]:
        """Empty list when the rows form a symplectic basis with commuting stabilisers."""
        n, problems = self.n, []
        for i in range(n):
            for j in range(n):
                want = 1 if i == j else 0
                if symplectic_product(self.rows[i], self.rows[n + j]) != want:
                    problems.append(f"destabiliser {i} vs stabiliser {j}")
            for j in range(i + 1, n):
                if symplectic_product(self.rows[n + i], self.rows[n + j]):
                    problems.append(f"stabilisers {i} and {j} anticommute")
        for r in self.rows:
            if not r.is_hermitian():
                problems.append(f"non-Hermitian row {r.to_text()}")
        return problems

    def expectation_sign(self, p: PauliWord) -> int | None:
        """+1/-1 if ``p`` is fixed by the state, None if the outcome is random."""
        n = self.n
        if any(symplectic_product(p, s) for s in self.stabilisers):
            return None
        acc = PauliWord.identity(n)
        for i in range(n):
            if symplectic_product(p, self.rows[i]):
                acc = multiply(acc, self.rows[n + i])
        if not acc.same_pattern(p):
            raise AssertionError("commuting Pauli not generated by the stabiliser rows")
        diff = (p.phase - acc.phase) % 4
        if diff % 2:
            raise ValueError(f"measured operator is not Hermitian: {p.to_text()}")
        return 1 if diff == 0 else -1


def measure_pauli(state: Tableau, p: PauliWord, rng: random.Random) -> MeasurementResult:
    """Projective measurement of the Hermitian Pauli ``p``; updates ``state`` in place."""
    if p.is_identity():
        raise ValueError("cannot measure the identity")
    if not p.is_hermitian():
        raise ValueError(f"measured operator must be Hermitian, got {p.to_text()}")
    if p.n != state.n:
        raise ValueError(f"length mismatch: {p.n} vs {state.n}")
    n, rows = state.n, state.rows
    anti = [i for i in range(n, 2 * n) if symplectic_product(p, rows[i])]
    if not anti:
        sign = state.expectation_sign(p)
        assert sign is not None
        return MeasurementResult(sign, True)
    piv = anti[0]
    pivot_row = rows[piv]
    for i in range(2 * n):
        if i != piv and symplectic_product(p, rows[i]):
            rows[i] = multiply(rows[i], pivot_row)
    rows[piv - n] = pivot_row
    outcome = 1 if rng.random() < 0.5 else -1
    rows[piv] = p.hermitian() if outcome == 1 else p.hermitian().scaled(2)
    return MeasurementResult(outcome, False)


def apply_pauli(state: Tableau, e: PauliWord) -> None:
    """Conjugate the state by ``e``: every anticommuting row flips sign."""
    if e.n != state.n:
        raise ValueError(f"length mismatch: {e.n} vs {state.n}")
    for i, r in enumerate(state.rows):
        if symplectic_product(e, r):
            state.rows[i] = r.scaled(2)
