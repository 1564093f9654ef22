"""Code-state preparation, gauge measurement schedules and syndrome extraction."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..code import CodeStructure
from ..gf2 import OperatorSet, solve_affine
from ..pauli import PauliWord, multiply, symplectic_product
from .tableau import Tableau, apply_pauli, measure_pauli

DEFAULT_SEARCH_BUDGET = 1_000_000  # subset states visited per stabiliser
MAX_KERNEL_ENUMERATION = 18


def _swapped(p: PauliWord) -> int:
    return p.z | (p.x << p.n)


def stabiliser_frame(code: CodeStructure, bits: Sequence[int]) -> PauliWord:
    """A Pauli anticommuting with exactly the stabiliser generators flagged in ``bits``."""
    rows = [_swapped(s) for s in code.stabilisers]
    sol = solve_affine(rows, list(bits), 2 * code.n)
    if sol is None:
        raise ValueError("stabiliser generators are not independent")
    return PauliWord.from_bits(sol, code.n)


def maximal_commuting_subset(ops: Sequence[PauliWord], order: Sequence[int]) -> list[int]:
    chosen: list[int] = []
    for j in order:
        if all(ops[j].commutes_with(ops[c]) for c in chosen):
            chosen.append(j)
    return chosen


def prepare_code_state(code: CodeStructure, rng: random.Random) -> Tableau:
    """All stabilisers at +1 with a random commuting set of triangles fixed."""
    state = Tableau(code.n)
    flips = []
    for s in code.stabilisers:
        flips.append(0 if measure_pauli(state, s, rng).outcome == 1 else 1)
    if any(flips):
        apply_pauli(state, stabiliser_frame(code, flips))
    order = list(range(len(code.gauge)))
    rng.shuffle(order)
    for j in maximal_commuting_subset(list(code.gauge), order):
        measure_pauli(state, code.gauge[j], rng)
    return state


# -- schedule ------------------------------------------------------------------


@dataclass
class StabiliserBlock:
    stabiliser: int
    triangles: list[int]  # gauge indices in measurement order
    layers: list[list[int]]  # positions in ``triangles``, each layer mutually commuting
    phase: int  # value(S) = i**phase * prod(outcomes)


@dataclass
class GaugeSchedule:
    blocks: list[StabiliserBlock] = field(default_factory=list)
    direct: list[int] = field(default_factory=list)  # stabilisers measured directly
    visited_states: int = 0

    @property
    def fallback(self) -> bool:
        return bool(self.direct)

    @property
    def steps(self) -> list[tuple[int, int]]:
        """Flat measurement order as (stabiliser, gauge index) pairs."""
        return [(b.stabiliser, t) for b in self.blocks for t in b.triangles]

    def as_dict(self) -> dict[str, Any]:
        return {
            "blocks": [
                {"stabiliser": b.stabiliser, "triangles": b.triangles, "layers": b.layers, "phase": b.phase}
                for b in self.blocks
            ],
            "direct": self.direct,
            "fallback": self.fallback,
            "measurements": sum(len(b.triangles) for b in self.blocks),
        }


def _ordering(idx: list[int], gauge: OperatorSet, budget: list[int]) -> list[int] | None:
    """Order ``idx`` so each triangle commutes with the product of those before it.

    Depth-first over subsets already measured; a triangle may be added when
    it anticommutes with an even number of them.
    """
    m = len(idx)
    adj = [0] * m
    for a in range(m):
        for b in range(m):
            if symplectic_product(gauge[idx[a]], gauge[idx[b]]):
                adj[a] |= 1 << b
    full = (1 << m) - 1
    parent: dict[int, tuple[int, int] | None] = {0: None}
    stack = [0]
    while stack:
        s = stack.pop()
        budget[0] -= 1
        if budget[0] < 0:
            return None
        if s == full:
            order = []
            while parent[s] is not None:
                prev, v = parent[s]  # type: ignore[misc]
                order.append(idx[v])
                s = prev
            return order[::-1]
        for v in range(m - 1, -1, -1):
            if not (s >> v) & 1 and (adj[v] & s).bit_count() % 2 == 0:
                t = s | (1 << v)
                if t not in parent:
                    parent[t] = (s, v)
                    stack.append(t)
    return None


def _layers(order: list[int], gauge: OperatorSet) -> list[list[int]]:
    layers: list[list[int]] = []
    start = 0
    for pos in range(len(order)):
        if any(not gauge[order[pos]].commutes_with(gauge[order[q]]) for q in range(start, pos)):
            layers.append(list(range(start, pos)))
            start = pos
    if order:
        layers.append(list(range(start, len(order))))
    return layers


def _decomposition_candidates(target: PauliWord, gauge: OperatorSet) -> list[int]:
    """Coefficient masks reproducing ``target``, fewest triangles first."""
    x0 = gauge.decompose_mask(target)
    if x0 is None:
        return []
    ker = gauge.kernel
    if len(ker) > MAX_KERNEL_ENUMERATION:
        ker = ker[:MAX_KERNEL_ENUMERATION]
    out = []
    x = x0
    for i in range(1 << len(ker)):
        if i:
            x ^= ker[(i & -i).bit_length() - 1]
        out.append(x)
    out.sort(key=lambda v: (v.bit_count(), v))
    return out


def _translate(triangles: list[int], dr: int, dc: int, L: int) -> list[int]:
    """Shift gauge indices (``2 * anchor + orientation``) by a torus translation."""
    out = []
    for t in triangles:
        r, c = divmod(t // 2, L)
        out.append(2 * (((r + dr) % L) * L + (c + dc) % L) + t % 2)
    return out


def _block_for(si: int, order: list[int], code: CodeStructure) -> StabiliserBlock:
    gauge, s = code.gauge, code.stabilisers[si]
    prod = PauliWord.identity(code.n)
    for t in order:
        prod = multiply(prod, gauge[t])
    assert prod.same_pattern(s) and prod.is_hermitian()
    return StabiliserBlock(si, order, _layers(order, gauge), (s.phase - prod.phase) % 4)


def _translate_pauli(p: PauliWord, dr: int, dc: int, L: int) -> PauliWord:
    x = z = 0
    for j in range(p.n):
        r, c = divmod(j, L)
        k = ((r + dr) % L) * L + (c + dc) % L
        x |= ((p.x >> j) & 1) << k
        z |= ((p.z >> j) & 1) << k
    return PauliWord(p.n, x, z, p.phase)


def _find_translate(s: PauliWord, earlier: list[PauliWord], L: int) -> tuple[int, int, int] | None:
    for j, e in enumerate(earlier):
        if e.weight != s.weight:
            continue
        for dr in range(L):
            for dc in range(L):
                if _translate_pauli(e, dr, dc, L).same_pattern(s):
                    return j, dr, dc
    return None


def build_gauge_schedule(code: CodeStructure, budget: int = DEFAULT_SEARCH_BUDGET) -> GaugeSchedule:
    """Triangle measurement blocks whose outcomes multiply to each stabiliser.

    Decompositions are tried in increasing size over the coset
    ``x0 + ker`` and the first one admitting a valid ordering is used. When
    ``budget`` subset states are exhausted the stabiliser is measured
    directly and the schedule is flagged as a fallback. A stabiliser that
    is a torus translate of an earlier one inherits its outcome: the
    translated block, or direct measurement.
    """
    gauge, L = code.gauge, code.L
    stabs = list(code.stabilisers)
    sched = GaugeSchedule()
    orders: dict[int, list[int] | None] = {}
    for si, s in enumerate(stabs):
        hit = _find_translate(s, stabs[:si], L)
        if hit is not None:
            j, dr, dc = hit
            found = None if orders[j] is None else _translate(orders[j], dr, dc, L)
        else:
            remaining = [budget]
            found = None
            for mask in _decomposition_candidates(s, gauge):
                idx = [j for j in range(len(gauge)) if (mask >> j) & 1]
                found = _ordering(idx, gauge, remaining)
                if found is not None or remaining[0] < 0:
                    break
            sched.visited_states += budget - max(remaining[0], 0)
        orders[si] = found
        if found is None:
            sched.direct.append(si)
        else:
            sched.blocks.append(_block_for(si, found, code))
    return sched


# -- syndromes -----------------------------------------------------------------


@dataclass
class SyndromeRecord:
    stab_bits: list[int]  # 1 where the stabiliser value is -1
    gauge_outcomes: list[tuple[int, int, int]] = field(default_factory=list)  # (step, gauge index, outcome)

    def as_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.stab_bits))


def run_schedule(state: Tableau, code: CodeStructure, schedule: GaugeSchedule, rng: random.Random) -> SyndromeRecord:
    s = len(code.stabilisers)
    bits = [0] * s
    outcomes = []
    step = 0
    for block in schedule.blocks:
        value = 1
        for t in block.triangles:
            r = measure_pauli(state, code.gauge[t], rng)
            outcomes.append((step, t, r.outcome))
            value *= r.outcome
            step += 1
        # i**phase is real because both the product and the stabiliser are Hermitian
        if block.phase == 2:
            value = -value
        bits[block.stabiliser] = 0 if value == 1 else 1
    for si in schedule.direct:
        bits[si] = 0 if measure_pauli(state, code.stabilisers[si], rng).outcome == 1 else 1
    return SyndromeRecord(bits, outcomes)


def extract_syndrome(
    state: Tableau,
    code: CodeStructure,
    mode: str,
    rng: random.Random,
    schedule: GaugeSchedule | None = None,
) -> SyndromeRecord:
    if mode == "direct":
        bits = [0 if measure_pauli(state, s, rng).outcome == 1 else 1 for s in code.stabilisers]
        return SyndromeRecord(bits)
    if mode == "gauge":
        if schedule is None:
            schedule = build_gauge_schedule(code)
        return run_schedule(state, code, schedule, rng)
    raise ValueError(f"mode must be 'direct' or 'gauge', got {mode!r}")
