"""Depolarising noise, lookup-table decoding and Monte-Carlo failure rates.

Shots are drawn in fixed-size chunks, each from its own generator seeded by
``(seed, chunk_index)``. A shot's error therefore depends only on the seed
and its index, whichever thread computes it or however many shots are run.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist
from typing import Any

import numpy as np

from ..code import CodeStructure
from ..gf2 import centraliser_in_pauli_group
from ..pauli import PauliWord, multiply, symplectic_product

CHUNK = 1 << 15
MAX_DECODER_L = 5
_CSV_FIELDS = ("L", "p", "shots", "failures", "rate", "ci_low", "ci_high", "unknown_syndrome_count", "seed")


class DecoderUnsupported(ValueError):
    pass


@dataclass(frozen=True)
class NoiseModel:
    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @property
    def probabilities(self) -> dict[str, float]:
        q = self.p / 3
        return {"I": 1.0 - self.p, "X": q, "Y": q, "Z": q}


def _letters_from_uniform(u: np.ndarray, p: float) -> tuple[np.ndarray, np.ndarray]:
    """X for u < p/3, Y for p/3 <= u < 2p/3, Z for 2p/3 <= u < p."""
    q = p / 3
    x = u < 2 * q
    z = (u >= q) & (u < p)
    return x, z


def _chunk(noise: NoiseModel, n: int, seed: int, index: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng([seed, index])
    return _letters_from_uniform(rng.random((CHUNK, n)), noise.p)


def _row_to_pauli(x: np.ndarray, z: np.ndarray) -> PauliWord:
    xb = sum(1 << int(j) for j in np.flatnonzero(x))
    zb = sum(1 << int(j) for j in np.flatnonzero(z))
    return PauliWord(len(x), xb, zb)


def sample_error(noise: NoiseModel, n: int, rng: np.random.Generator) -> PauliWord:
    x, z = _letters_from_uniform(rng.random(n), noise.p)
    return _row_to_pauli(x, z)


def shot_error(noise: NoiseModel, n: int, seed: int, shot: int) -> PauliWord:
    """The error the Monte-Carlo driver uses for shot ``shot`` under ``seed``."""
    x, z = _chunk(noise, n, seed, shot // CHUNK)
    return _row_to_pauli(x[shot % CHUNK], z[shot % CHUNK])


def syndrome_of(p: PauliWord, code: CodeStructure) -> int:
    out = 0
    for i, s in enumerate(code.stabilisers):
        if symplectic_product(p, s):
            out |= 1 << i
    return out


@dataclass
class DecoderTable:
    t: int
    s: int
    table: dict[int, PauliWord]

    def correction(self, syndrome: int) -> PauliWord | None:
        return self.table.get(syndrome)

    def __len__(self) -> int:
        return len(self.table)


def errors_of_weight(n: int, w: int):
    for sites in itertools.combinations(range(n), w):
        for letters in itertools.product("XYZ", repeat=w):
            yield PauliWord.from_letters(dict(zip(sites, letters)), n)


def build_decoder(code: CodeStructure) -> DecoderTable:
    """Minimum-weight lookup table over all errors of weight <= (L-1)//2."""
    if code.L > MAX_DECODER_L:
        raise DecoderUnsupported(f"lookup decoder limited to L <= {MAX_DECODER_L}, got L={code.L}")
    n = code.n
    t = (code.L - 1) // 2
    table = {0: PauliWord.identity(n)}
    for w in range(1, t + 1):
        for e in errors_of_weight(n, w):
            table.setdefault(syndrome_of(e, code), e)
    return DecoderTable(t, len(code.stabilisers), table)


def decode_outcome(e: PauliWord, code: CodeStructure, decoder: DecoderTable) -> tuple[bool, bool]:
    """(success, syndrome_known) for a single error, by direct classification."""
    c = decoder.correction(syndrome_of(e, code))
    known = c is not None
    residual = multiply(e, c) if known else e
    return code.gauge.contains_bits(residual.bits), known


# -- Monte Carlo ---------------------------------------------------------------


def wilson_interval(k: int, n: int, level: float = 0.95) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    zq = NormalDist().inv_cdf(0.5 + level / 2)
    phat = k / n
    denom = 1 + zq * zq / n
    centre = (phat + zq * zq / (2 * n)) / denom
    half = zq * math.sqrt(phat * (1 - phat) / n + zq * zq / (4 * n * n)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class MonteCarloResult:
    L: int
    p: float
    shots: int
    failures: int
    unknown_syndrome_count: int
    unknown_failures: int
    seed: int

    @property
    def rate(self) -> float:
        return self.failures / self.shots if self.shots else 0.0

    @property
    def wilson_interval(self) -> tuple[float, float]:
        return wilson_interval(self.failures, self.shots)

    def as_dict(self) -> dict[str, Any]:
        lo, hi = self.wilson_interval
        return {
            "L": self.L,
            "p": self.p,
            "shots": self.shots,
            "failures": self.failures,
            "logical_error_rate": self.rate,
            "wilson_interval": [lo, hi],
            "unknown_syndrome_count": self.unknown_syndrome_count,
            "unknown_syndrome_failures": self.unknown_failures,
            "seed": self.seed,
        }

    def csv_row(self) -> list[Any]:
        lo, hi = self.wilson_interval
        return [self.L, self.p, self.shots, self.failures, self.rate, lo, hi, self.unknown_syndrome_count, self.seed]

    @staticmethod
    def csv_header() -> list[str]:
        return list(_CSV_FIELDS)


class _VectorDecoder:
    """Dense arrays for syndrome lookup and gauge-membership tests."""

    def __init__(self, code: CodeStructure, decoder: DecoderTable) -> None:
        n = code.n
        self.n = n
        self.sx = _bit_matrix([s.x for s in code.stabilisers], n)
        self.sz = _bit_matrix([s.z for s in code.stabilisers], n)
        self.weights = (1 << np.arange(len(code.stabilisers), dtype=np.int64)).astype(np.int64)
        size = 1 << len(code.stabilisers)
        self.known = np.zeros(size, dtype=bool)
        self.cx = np.zeros((size, n), dtype=bool)
        self.cz = np.zeros((size, n), dtype=bool)
        for synd, c in decoder.table.items():
            self.known[synd] = True
            self.cx[synd] = _bit_matrix([c.x], n)[0].astype(bool)
            self.cz[synd] = _bit_matrix([c.z], n)[0].astype(bool)
        # a Pauli lies in the gauge group iff it commutes with its centraliser
        cent = list(centraliser_in_pauli_group(code.gauge))
        self.gx = _bit_matrix([c.x for c in cent], n)
        self.gz = _bit_matrix([c.z for c in cent], n)

    def evaluate(self, x: np.ndarray, z: np.ndarray) -> tuple[int, int, int]:
        xf, zf = x.astype(np.float32), z.astype(np.float32)
        bits = (xf @ self.sz.T + zf @ self.sx.T).astype(np.int64) & 1
        synd = bits @ self.weights
        rx = x ^ self.cx[synd]
        rz = z ^ self.cz[synd]
        rxf, rzf = rx.astype(np.float32), rz.astype(np.float32)
        outside = ((rxf @ self.gz.T + rzf @ self.gx.T).astype(np.int64) & 1).any(axis=1)
        unknown = ~self.known[synd]
        return int(outside.sum()), int(unknown.sum()), int((outside & unknown).sum())


def _bit_matrix(rows: list[int], n: int) -> np.ndarray:
    out = np.zeros((len(rows), n), dtype=np.float32)
    for i, r in enumerate(rows):
        for j in range(n):
            if (r >> j) & 1:
                out[i, j] = 1.0
    return out


def monte_carlo(
    code: CodeStructure,
    decoder: DecoderTable,
    noise: NoiseModel,
    shots: int,
    seed: int,
    threads: int = 1,
) -> MonteCarloResult:
    """Logical failure rate of lookup decoding under depolarising noise.

    A shot fails when error times correction lies outside the gauge group.
    Unknown syndromes get no correction; they are tallied separately and
    count as failures, since the residual is then still detectable.
    """
    if shots < 0:
        raise ValueError("shots must be non-negative")
    vec = _VectorDecoder(code, decoder)
    nchunks = -(-shots // CHUNK)

    def run(index: int) -> tuple[int, int, int]:
        x, z = _chunk(noise, code.n, seed, index)
        size = min(CHUNK, shots - index * CHUNK)
        return vec.evaluate(x[:size], z[:size])

    if threads > 1 and nchunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, range(nchunks)))
    else:
        parts = [run(i) for i in range(nchunks)]
    fails = sum(p[0] for p in parts)
    unknown = sum(p[1] for p in parts)
    unknown_fails = sum(p[2] for p in parts)
    return MonteCarloResult(code.L, noise.p, shots, fails, unknown, unknown_fails, seed)


# -- exact oracle ----------------------------------------------------------------


def failure_counts_by_weight(code: CodeStructure, decoder: DecoderTable, max_weight: int | None = None) -> list[int]:
    """Number of weight-w errors that decoding fails on, for w = 0..max_weight."""
    n = code.n
    max_weight = n if max_weight is None else max_weight
    counts = [0]
    for w in range(1, max_weight + 1):
        counts.append(sum(1 for e in errors_of_weight(n, w) if not decode_outcome(e, code, decoder)[0]))
    return counts


def exact_failure_probability(counts: list[int], n: int, p: float) -> float:
    q = p / 3
    return sum(c * q**w * (1 - p) ** (n - w) for w, c in enumerate(counts))
