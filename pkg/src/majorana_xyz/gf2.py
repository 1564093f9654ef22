"""GF(2) linear algebra over symplectic Pauli rows.

Rows and coefficient vectors are Python ints used as bitsets. Everything
here is phase-blind; phases are recovered by ordered multiplication when a
caller needs them.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .pauli import PauliWord, multiply


def rank_of_rows(rows: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    return len(basis)


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of ``{x : popcount(row & x) even for every row}``.

    Returned vectors are ordered by their free column, so the output is
    deterministic for a given input.
    """
    pivots: dict[int, int] = {}
    for r in rows:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        if not r:
            continue
        col = r.bit_length() - 1
        for c2 in pivots:
            if (pivots[c2] >> col) & 1:
                pivots[c2] ^= r
        pivots[col] = r
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = 1 << f
        for col, prow in pivots.items():
            if (prow >> f) & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> int | None:
    """One solution ``x`` of ``popcount(rows[i] & x) % 2 == rhs[i]``, or None."""
    aug = [r | (b << ncols) for r, b in zip(rows, rhs)]
    pivots: dict[int, int] = {}
    for r in aug:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        low = r & ((1 << ncols) - 1)
        if not low:
            if r:
                return None
            continue
        col = low.bit_length() - 1
        for c2 in pivots:
            if (pivots[c2] >> col) & 1:
                pivots[c2] ^= r
        pivots[col] = r
    x = 0
    for col, prow in pivots.items():
        if (prow >> ncols) & 1:
            x |= 1 << col
    return x


def bits_to_list(mask: int, length: int) -> list[int]:
    return [(mask >> j) & 1 for j in range(length)]


def list_to_bits(coeffs: Sequence[int]) -> int:
    out = 0
    for j, c in enumerate(coeffs):
        if c & 1:
            out |= 1 << j
    return out


class OperatorSet:
    """Ordered Pauli list with a cached echelon basis.

    The basis maps each pivot (highest set bit of a reduced row) to the row
    and the member combination that produced it.
    """

    def __init__(self, members: Iterable[PauliWord], n: int | None = None) -> None:
        self.members: tuple[PauliWord, ...] = tuple(members)
        if n is None:
            if not self.members:
                raise ValueError("empty OperatorSet needs an explicit qubit count")
            n = self.members[0].n
        for m in self.members:
            if m.n != n:
                raise ValueError(f"member on {m.n} qubits in a set over {n}")
        self.n = n

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> PauliWord:
        return self.members[i]

    @cached_property
    def _echelon(self) -> tuple[dict[int, tuple[int, int]], list[int]]:
        piv: dict[int, tuple[int, int]] = {}
        kernel = []
        for j, m in enumerate(self.members):
            v, c = m.bits, 1 << j
            while v:
                h = v.bit_length() - 1
                if h not in piv:
                    piv[h] = (v, c)
                    break
                bv, bc = piv[h]
                v ^= bv
                c ^= bc
            else:
                kernel.append(c)
        return piv, kernel

    @property
    def rank(self) -> int:
        return len(self._echelon[0])

    @property
    def kernel(self) -> list[int]:
        """Member combinations whose product is proportional to the identity."""
        return list(self._echelon[1])

    def reduce(self, bits: int) -> tuple[int, int]:
        """(residual, combination) after eliminating against the basis."""
        piv = self._echelon[0]
        c = 0
        while bits:
            h = bits.bit_length() - 1
            if h not in piv:
                return bits, c
            bv, bc = piv[h]
            bits ^= bv
            c ^= bc
        return 0, c

    def contains_bits(self, bits: int) -> bool:
        return self.reduce(bits)[0] == 0

    def in_span(self, p: PauliWord) -> bool:
        self._check(p)
        return self.contains_bits(p.bits)

    def decompose_mask(self, p: PauliWord) -> int | None:
        self._check(p)
        residual, c = self.reduce(p.bits)
        return None if residual else c

    def decompose(self, p: PauliWord) -> list[int] | None:
        c = self.decompose_mask(p)
        return None if c is None else bits_to_list(c, len(self.members))

    def product_of(self, coeffs: int | Sequence[int]) -> PauliWord:
        """Ordered product of the selected members."""
        mask = coeffs if isinstance(coeffs, int) else list_to_bits(coeffs)
        out = PauliWord.identity(self.n)
        for j, m in enumerate(self.members):
            if (mask >> j) & 1:
                out = multiply(out, m)
        return out

    def basis_bits(self) -> list[int]:
        """Fully reduced echelon rows, sorted by pivot."""
        piv = self._echelon[0]
        rows = {h: v for h, (v, _) in piv.items()}
        for h in sorted(rows):
            for h2 in rows:
                if h2 != h and (rows[h2] >> h) & 1:
                    rows[h2] ^= rows[h]
        return [rows[h] for h in sorted(rows)]

    def gram(self) -> list[int]:
        return gram_matrix(self.members)

    def _check(self, p: PauliWord) -> None:
        if p.n != self.n:
            raise ValueError(f"operator on {p.n} qubits queried against set over {self.n}")


def gram_matrix(gens: Sequence[PauliWord]) -> list[int]:
    """Row ``i`` has bit ``j`` set when generators ``i`` and ``j`` anticommute."""
    if not gens:
        return []
    n = gens[0].n
    swapped = [g.z | (g.x << n) for g in gens]
    rows = []
    for g in gens:
        b = g.bits
        row = 0
        for j, s in enumerate(swapped):
            if (b & s).bit_count() & 1:
                row |= 1 << j
        rows.append(row)
    return rows


def rank(s: OperatorSet) -> int:
    return s.rank


def in_span(p: PauliWord, s: OperatorSet) -> bool:
    return s.in_span(p)


def decompose(p: PauliWord, s: OperatorSet) -> list[int] | None:
    return s.decompose(p)


def centre(gens: OperatorSet) -> OperatorSet:
    """Basis of the products of ``gens`` that commute with every generator.

    Coefficient vectors come from the nullspace of the Gram matrix; vectors
    that differ by a relation among the generators give the same operator, so
    the images are row-reduced to a canonical independent set.
    """
    m = len(gens)
    null = nullspace(gens.gram(), m)
    images = []
    for x in null:
        bits = 0
        for j in range(m):
            if (x >> j) & 1:
                bits ^= gens.members[j].bits
        images.append(bits)
    reduced = OperatorSet([PauliWord.from_bits(b, gens.n) for b in images], gens.n)
    return OperatorSet([PauliWord.from_bits(b, gens.n) for b in reduced.basis_bits()], gens.n)


def centraliser_in_pauli_group(s: OperatorSet) -> OperatorSet:
    """Basis of all Paulis commuting with every member; dimension ``2n - rank``."""
    n = s.n
    rows = [g.z | (g.x << n) for g in s.members]
    return OperatorSet([PauliWord.from_bits(v, n) for v in nullspace(rows, 2 * n)], n)
