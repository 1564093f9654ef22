"""n-qubit Pauli operators in binary symplectic form.

A :class:`PauliWord` is ``i**phase`` times a tensor product of the Hermitian
letters I, X, Y, Z. The X and Z parts are packed into Python ints (bit ``j``
is qubit ``j``), so XOR and ``int.bit_count`` carry the hot loops.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_TEXT_PHASE = {v: k for k, v in _PHASE_TEXT.items()}
_TOKEN = re.compile(r"^([XYZ])(\d+)$")


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliWord:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError(f"bit pattern exceeds {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliWord":
        return cls(n)

    @classmethod
    def from_letters(cls, letters: Mapping[int, str], n: int, phase: int = 0) -> "PauliWord":
        x = z = 0
        for site, letter in letters.items():
            if not 0 <= site < n:
                raise ValueError(f"site {site} out of range for n={n}")
            if letter == "X":
                x |= 1 << site
            elif letter == "Z":
                z |= 1 << site
            elif letter == "Y":
                x |= 1 << site
                z |= 1 << site
            else:
                raise ValueError(f"letter must be X, Y or Z; got {letter!r}")
        return cls(n, x, z, phase)

    @classmethod
    def from_text(cls, text: str, n: int) -> "PauliWord":
        """Inverse of :meth:`to_text`."""
        parts = text.split()
        if not parts or parts[0] not in _TEXT_PHASE:
            raise ValueError(f"malformed Pauli text {text!r}")
        phase = _TEXT_PHASE[parts[0]]
        body = parts[1:]
        if body == ["I"]:
            return cls(n, phase=phase)
        letters = {}
        for tok in body:
            m = _TOKEN.match(tok)
            if m is None:
                raise ValueError(f"malformed Pauli token {tok!r} in {text!r}")
            site = int(m.group(2))
            if site in letters:
                raise ValueError(f"site {site} repeated in {text!r}")
            letters[site] = m.group(1)
        return cls.from_letters(letters, n, phase)

    def letters(self) -> dict[int, str]:
        out = {}
        v = self.x | self.z
        while v:
            low = v & -v
            j = low.bit_length() - 1
            out[j] = "Y" if (self.x & self.z & low) else ("X" if self.x & low else "Z")
            v ^= low
        return out

    def to_text(self) -> str:
        body = " ".join(f"{a}{j}" for j, a in self.letters().items())
        return f"{_PHASE_TEXT[self.phase]} {body or 'I'}"

    def __str__(self) -> str:
        return self.to_text()

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> list[int]:
        return sorted(self.letters())

    @property
    def bits(self) -> int:
        """Symplectic row ``x | z << n`` used by the GF(2) routines."""
        return self.x | (self.z << self.n)

    @classmethod
    def from_bits(cls, bits: int, n: int, phase: int = 0) -> "PauliWord":
        mask = (1 << n) - 1
        return cls(n, bits & mask, bits >> n, phase)

    def is_identity(self) -> bool:
        return not (self.x | self.z)

    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def hermitian(self) -> "PauliWord":
        """Same bit pattern with the phase rounded down to a real sign."""
        return PauliWord(self.n, self.x, self.z, self.phase & 2)

    def unsigned(self) -> "PauliWord":
        return PauliWord(self.n, self.x, self.z, 0)

    def same_pattern(self, other: "PauliWord") -> bool:
        return self.n == other.n and self.x == other.x and self.z == other.z

    def commutes_with(self, other: "PauliWord") -> bool:
        return symplectic_product(self, other) == 0

    def __mul__(self, other: "PauliWord") -> "PauliWord":
        return multiply(self, other)

    def scaled(self, phase: int) -> "PauliWord":
        return PauliWord(self.n, self.x, self.z, self.phase + phase)


def _check_len(p: PauliWord, q: PauliWord) -> None:
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p.n} vs {q.n}")


def symplectic_product(p: PauliWord, q: PauliWord) -> int:
    """0 if ``p`` and ``q`` commute, 1 if they anticommute."""
    _check_len(p, q)
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) & 1


def multiply(p: PauliWord, q: PauliWord) -> PauliWord:
    """Operator product ``p @ q`` with exact phase."""
    _check_len(p, q)
    px_only, py, pz_only = p.x & ~p.z, p.x & p.z, p.z & ~p.x
    qx_only, qy, qz_only = q.x & ~q.z, q.x & q.z, q.z & ~q.x
    # XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i
    plus = (px_only & qy) | (py & qz_only) | (pz_only & qx_only)
    minus = (py & qx_only) | (pz_only & qy) | (px_only & qz_only)
    phase = p.phase + q.phase + _popcount(plus) - _popcount(minus)
    return PauliWord(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def weight(p: PauliWord) -> int:
    return p.weight


def product(words: Iterable[PauliWord], n: int) -> PauliWord:
    """Ordered product of ``words`` (left to right)."""
    out = PauliWord.identity(n)
    for w in words:
        out = multiply(out, w)
    return out
