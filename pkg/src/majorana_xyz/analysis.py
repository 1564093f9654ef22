"""Error classification, exhaustive low-weight census and distance search.

Enumeration uses per-site syndrome masks over the stabiliser basis: a word
is only handed to the (comparatively slow) gauge-span test when its
syndrome XORs to zero. The last site of every support is found by a table
lookup on the syndrome still to be cancelled, so the search visits
``C(n, w-1) 3^(w-1)`` prefixes instead of ``C(n, w) 3^w`` words.
"""

from __future__ import annotations

import bisect
import enum
import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable

from .code import (
    CodeStructure,
    consecutive_double_loops,
    logical_algebra_violations,
    loop_operator,
)
from .gf2 import OperatorSet, centre, centraliser_in_pauli_group
from .lattice import (
    LOOP_KINDS,
    dilated_triangle_supports,
    loop_support,
    triangle_supports,
)
from .pauli import PauliWord, multiply, symplectic_product

DEFAULT_CANDIDATE_CAP = 10**9
_LETTER_BITS = ((1, 0), (1, 1), (0, 1))  # X, Y, Z as (x, z)


class ErrorKind(str, enum.Enum):
    DETECTABLE = "DETECTABLE"
    GAUGE = "GAUGE"
    LOGICAL = "LOGICAL"


@dataclass(frozen=True)
class ErrorClass:
    kind: ErrorKind
    # DETECTABLE: index of an anticommuting stabiliser; GAUGE: coefficient list
    witness: Any = None


def classify(p: PauliWord, code: CodeStructure) -> ErrorClass:
    if p.is_identity():
        raise ValueError("the identity is not an error")
    for i, s in enumerate(code.stabilisers):
        if symplectic_product(p, s):
            return ErrorClass(ErrorKind.DETECTABLE, i)
    coeffs = code.gauge.decompose(p)
    if coeffs is not None:
        return ErrorClass(ErrorKind.GAUGE, coeffs)
    return ErrorClass(ErrorKind.LOGICAL)


# -- enumeration ---------------------------------------------------------------


@dataclass
class _SyndromeTable:
    n: int
    masks: list[tuple[int, int, int]]  # per site: syndromes of X, Y, Z
    by_syndrome: dict[int, tuple[list[int], list[int]]]  # synd -> (sites, letters)

    @classmethod
    def build(cls, code: CodeStructure) -> "_SyndromeTable":
        n = code.n
        masks = []
        by: dict[int, tuple[list[int], list[int]]] = {}
        for j in range(n):
            row = []
            for li, (bx, bz) in enumerate(_LETTER_BITS):
                single = PauliWord(n, bx << j, bz << j)
                synd = 0
                for i, s in enumerate(code.stabilisers):
                    if symplectic_product(single, s):
                        synd |= 1 << i
                row.append(synd)
                sites, letters = by.setdefault(synd, ([], []))
                sites.append(j)
                letters.append(li)
            masks.append(tuple(row))
        return cls(n, masks, by)


def _zero_syndrome_words(table: _SyndromeTable, w: int, lead: int) -> list[tuple[int, int]]:
    """All syndrome-free words of weight ``w`` whose lowest site is ``lead``."""
    n, masks, by = table.n, table.masks, table.by_syndrome
    out: list[tuple[int, int]] = []
    if w == 1:
        for li, (bx, bz) in enumerate(_LETTER_BITS):
            if masks[lead][li] == 0:
                out.append((bx << lead, bz << lead))
        return out

    def finish(last: int, acc: int, x: int, z: int) -> None:
        hit = by.get(acc)
        if hit is None:
            return
        sites, letters = hit
        for idx in range(bisect.bisect_right(sites, last), len(sites)):
            j = sites[idx]
            bx, bz = _LETTER_BITS[letters[idx]]
            out.append((x | (bx << j), z | (bz << j)))

    def extend(depth: int, last: int, acc: int, x: int, z: int) -> None:
        if depth == w - 1:
            finish(last, acc, x, z)
            return
        for j in range(last + 1, n - (w - 1 - depth) + 1):
            mj = masks[j]
            for li, (bx, bz) in enumerate(_LETTER_BITS):
                extend(depth + 1, j, acc ^ mj[li], x | (bx << j), z | (bz << j))

    for li, (bx, bz) in enumerate(_LETTER_BITS):
        extend(1, lead, masks[lead][li], bx << lead, bz << lead)
    return out


def _partition_job(args: tuple[_SyndromeTable, int, int]) -> list[tuple[int, int]]:
    table, w, lead = args
    return _zero_syndrome_words(table, w, lead)


def _zero_syndrome_by_lead(
    table: _SyndromeTable, w: int, threads: int = 1
) -> Iterable[list[tuple[int, int]]]:
    """Per-lead partitions in lead order, optionally computed by worker processes."""
    leads = range(0, table.n - w + 1)
    if threads <= 1:
        for lead in leads:
            yield _zero_syndrome_words(table, w, lead)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(_partition_job, [(table, w, lead) for lead in leads])


def candidate_count(n: int, w: int) -> int:
    return math.comb(n, w) * 3**w


# -- census --------------------------------------------------------------------


@dataclass
class WeightCensus:
    weight: int
    candidates: int
    detectable: int = 0
    gauge: int = 0
    logical: int = 0
    span_tests: int = 0

    @property
    def pruned_fraction(self) -> float:
        return 1.0 - self.span_tests / self.candidates if self.candidates else 0.0

    def as_dict(self) -> dict[str, Any]:
        return {
            "weight": self.weight,
            "candidates": self.candidates,
            "detectable": self.detectable,
            "gauge": self.gauge,
            "logical": self.logical,
            "span_tests": self.span_tests,
            "pruned_fraction": round(self.pruned_fraction, 6),
        }


@dataclass
class ClassificationSummary:
    L: int
    max_weight: int
    complete: bool
    per_weight: list[WeightCensus]
    gauge_reps: dict[int, list[PauliWord]] = field(default_factory=dict)
    logical_reps: dict[int, list[PauliWord]] = field(default_factory=dict)

    def census(self, w: int) -> WeightCensus | None:
        return next((c for c in self.per_weight if c.weight == w), None)

    def as_dict(self, reps_limit: int = 20) -> dict[str, Any]:
        return {
            "L": self.L,
            "max_weight": self.max_weight,
            "complete": self.complete,
            "per_weight": [c.as_dict() for c in self.per_weight],
            "gauge_examples": {
                str(w): [p.to_text() for p in ps[:reps_limit]] for w, ps in sorted(self.gauge_reps.items())
            },
            "logical_examples": {
                str(w): [p.to_text() for p in ps[:reps_limit]] for w, ps in sorted(self.logical_reps.items())
            },
        }


def classify_exhaustive(
    code: CodeStructure,
    max_weight: int,
    cap: int = DEFAULT_CANDIDATE_CAP,
    threads: int = 1,
) -> ClassificationSummary:
    """Classify every Pauli of weight 1..max_weight.

    Weights whose cumulative candidate count would exceed ``cap`` are not
    run; the summary is then flagged incomplete.
    """
    n = code.n
    table = _SyndromeTable.build(code)
    gauge = code.gauge
    per_weight = []
    gauge_reps: dict[int, list[PauliWord]] = {}
    logical_reps: dict[int, list[PauliWord]] = {}
    spent = 0
    complete = True
    for w in range(1, max_weight + 1):
        cands = candidate_count(n, w)
        if spent + cands > cap:
            complete = False
            break
        spent += cands
        census = WeightCensus(w, cands)
        for part in _zero_syndrome_by_lead(table, w, threads):
            for x, z in part:
                census.span_tests += 1
                p = PauliWord(n, x, z)
                if gauge.contains_bits(p.bits):
                    census.gauge += 1
                    gauge_reps.setdefault(w, []).append(p)
                else:
                    census.logical += 1
                    logical_reps.setdefault(w, []).append(p)
        census.detectable = cands - census.span_tests
        per_weight.append(census)
    return ClassificationSummary(code.L, max_weight, complete, per_weight, gauge_reps, logical_reps)


# -- distance ------------------------------------------------------------------


@dataclass
class DistanceCertificate:
    d: int | None
    lower_bound: int
    witness: PauliWord | None
    budget_weight: int
    span_tests: int

    def as_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "lower_bound": self.lower_bound,
            "witness": self.witness.to_text() if self.witness else None,
            "witness_weight": self.witness.weight if self.witness else None,
            "budget_weight": self.budget_weight,
            "span_tests": self.span_tests,
        }


def certify_distance(code: CodeStructure, budget_weight: int, threads: int = 1) -> DistanceCertificate:
    """Lowest-weight logical up to ``budget_weight``, or a lower bound."""
    n = code.n
    if not 1 <= budget_weight <= n:
        raise ValueError(f"budget weight must be in 1..{n}")
    table = _SyndromeTable.build(code)
    tests = 0
    for w in range(1, budget_weight + 1):
        for part in _zero_syndrome_by_lead(table, w, threads):
            for x, z in part:
                tests += 1
                if not code.gauge.contains_bits(x | (z << n)):
                    return DistanceCertificate(w, w, PauliWord(n, x, z), budget_weight, tests)
    return DistanceCertificate(None, budget_weight + 1, None, budget_weight, tests)


# -- triangle families -----------------------------------------------------------


def dilated_triangles(code: CodeStructure) -> list[PauliWord]:
    return [PauliWord.from_letters(t, code.n) for t in dilated_triangle_supports(code.lat)]


def two_triangle_shapes(code: CodeStructure) -> dict[str, list[PauliWord]]:
    """Weight-4 products of two unit triangles.

    ``diamond``: the triangles share an edge; ``parallelogram``: they share
    one corner carrying the same letter.
    """
    tris = [PauliWord.from_letters(t, code.n) for t in triangle_supports(code.lat)]
    shapes: dict[str, dict[int, PauliWord]] = {"diamond": {}, "parallelogram": {}}
    for a, b in itertools.combinations(tris, 2):
        shared = len(set(a.support) & set(b.support))
        p = multiply(a, b).hermitian()
        if p.weight != 4:
            continue
        key = "diamond" if shared == 2 else "parallelogram"
        shapes[key].setdefault(p.bits, p.unsigned())
    return {k: [v[b] for b in sorted(v)] for k, v in shapes.items()}


def triangle_witness(p: PauliWord, family: list[PauliWord], max_factors: int = 3) -> list[PauliWord] | None:
    """Fewest members of ``family`` whose product has the bit pattern of ``p``."""
    bits = {f.bits: f for f in family}
    target = p.bits
    if target in bits:
        return [bits[target]]
    if max_factors >= 2:
        for f in family:
            rest = target ^ f.bits
            if rest in bits and rest != f.bits:
                return [f, bits[rest]]
    if max_factors >= 3:
        for f, g in itertools.combinations(family, 2):
            rest = target ^ f.bits ^ g.bits
            if rest in bits and rest not in (f.bits, g.bits):
                return [f, g, bits[rest]]
    return None


# -- verification report -----------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    claim: bool = False  # True when the check restates a published claim
    detail: Any = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict[str, Any]:
        return {"name": self.name, "status": self.status, "claim": self.claim, "detail": self.detail}


@dataclass
class VerificationReport:
    L: int
    checks: list[Check]
    results: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def skipped(self) -> bool:
        return any(c.status == "skipped" for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def as_dict(self) -> dict[str, Any]:
        return {
            "L": self.L,
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
            "claim_failures": [c.name for c in self.failures() if c.claim],
            "invariant_failures": [c.name for c in self.failures() if not c.claim],
            "results": self.results,
        }


def default_max_weight(L: int) -> int:
    return 4 if L <= 5 else 3 if L == 6 else 2


def default_distance_budget(L: int) -> int:
    return L if L <= 5 else 4


def _check(name: str, ok: bool, detail: Any = None, claim: bool = False) -> Check:
    return Check(name, "pass" if ok else "fail", claim, detail)


def lattice_checks(code: CodeStructure) -> list[Check]:
    lat = code.lat
    cover = [0] * lat.n
    for t in triangle_supports(lat):
        for s in t:
            cover[s] += 1
    loops = {(a, i): set(loop_support(a, i, lat)) for a in LOOP_KINDS for i in range(lat.L)}
    weight_ok = all(len(s) == lat.L for s in loops.values())
    disjoint_ok = all(
        not (loops[(a, i)] & loops[(a, j)]) for a in LOOP_KINDS for i in range(lat.L) for j in range(i + 1, lat.L)
    )
    bad_cross = [
        (a, i, b, j)
        for (a, i), (b, j) in itertools.combinations(loops, 2)
        if a != b and len(loops[(a, i)] & loops[(b, j)]) != 1
    ]
    return [
        _check("lattice.triangle_cover_6", set(cover) == {6}, {"cover_counts": sorted(set(cover))}),
        _check("lattice.loop_weight_L", weight_ok),
        _check("lattice.parallel_loops_disjoint", disjoint_ok),
        _check("lattice.crossing_loops_meet_once", not bad_cross, {"counterexamples": bad_cross[:5]}),
    ]


def pauli_checks(code: CodeStructure, samples: int = 2000, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    n = code.n
    full = (1 << n) - 1

    def rand() -> PauliWord:
        return PauliWord(n, rng.getrandbits(n) & full, rng.getrandbits(n) & full, rng.randrange(4))

    sym = bil = comm = assoc = True
    for _ in range(samples):
        p, q, r = rand(), rand(), rand()
        sym &= symplectic_product(p, q) == symplectic_product(q, p)
        bil &= symplectic_product(multiply(p, q), r) == symplectic_product(p, r) ^ symplectic_product(q, r)
        pq, qp = multiply(p, q), multiply(q, p)
        comm &= pq.same_pattern(qp) and (pq.phase - qp.phase) % 4 == 2 * symplectic_product(p, q)
        assoc &= multiply(multiply(p, q), r) == multiply(p, multiply(q, r))
    return [
        _check("pauli.symplectic_symmetry", sym),
        _check("pauli.symplectic_bilinearity", bil),
        _check("pauli.commutation_phase", comm),
        _check("pauli.associativity", assoc),
    ]


def group_checks(code: CodeStructure, samples: int = 200, seed: int = 0) -> list[Check]:
    gauge = code.gauge
    ctr = centre(gauge)
    in_span = all(gauge.in_span(c) for c in ctr)
    commuting = all(c.commutes_with(g) for c in ctr for g in gauge)
    dls = consecutive_double_loops(code.lat)
    dl_central = all(ctr.in_span(d) for d in dls)
    rng = random.Random(seed)
    m = len(gauge)
    trip = True
    for _ in range(samples):
        mask = rng.getrandbits(m)
        target = gauge.product_of(mask)
        coeffs = gauge.decompose(target)
        trip &= coeffs is not None and gauge.product_of(coeffs).same_pattern(target)
    cdim = centraliser_in_pauli_group(gauge).rank
    dl_set = OperatorSet(dls, code.n)
    all_letter = {a: PauliWord.from_letters({s: a for s in range(code.n)}, code.n) for a in "XYZ"}
    return [
        _check("group.centre_inside_gauge_span", in_span),
        _check("group.centre_commutes_with_triangles", commuting),
        _check("group.double_loops_central", dl_central),
        _check("group.decompose_round_trip", trip, {"samples": samples}),
        _check("group.centraliser_dimension", cdim == 2 * code.n - gauge.rank, {"dim": cdim}),
        Check(
            "group.central_elements_beyond_double_loops",
            "pass",
            False,
            {
                "double_loop_rank": dl_set.rank,
                "centre_rank": ctr.rank,
                "extra": [p.to_text() for p in code.extra_central],
                "all_letter_operator_in_gauge": {a: gauge.in_span(p) for a, p in all_letter.items()},
            },
        ),
    ]


def commutation_checks(code: CodeStructure) -> list[Check]:
    lat, n = code.lat, code.n
    L = lat.L
    singles = {(a, i): loop_operator(a, i, lat) for a in LOOP_KINDS for i in range(L)}
    doubles = {(a, i): multiply(singles[(a, i)], singles[(a, (i + 1) % L)]) for a in LOOP_KINDS for i in range(L)}
    eq2a = [(k1, k2) for k1, k2 in itertools.combinations(doubles, 2) if not doubles[k1].commutes_with(doubles[k2])]
    eq2b = [(k1, k2) for k1 in doubles for k2 in singles if not doubles[k1].commutes_with(singles[k2])]
    tris = list(code.gauge)
    loop_tri = [(k, j) for k in singles for j, t in enumerate(tris) if not singles[k].commutes_with(t)]
    cross = [
        (k1, k2)
        for k1, k2 in itertools.combinations(singles, 2)
        if k1[0] != k2[0] and singles[k1].commutes_with(singles[k2])
    ]
    ups, downs = tris[0::2], tris[1::2]
    row_sums = [sum(symplectic_product(u, d) for d in downs) for u in ups]
    frustration = []
    for group in (ups, downs):
        for a, b in itertools.combinations(group, 2):
            shared = len(set(a.support) & set(b.support))
            anti = symplectic_product(a, b)
            if (shared == 1 and not anti) or (shared == 0 and anti):
                frustration.append((a.to_text(), b.to_text()))
    return [
        _check("commutation.double_double", not eq2a, {"counterexamples": eq2a[:5]}, claim=True),
        _check("commutation.double_single", not eq2b, {"counterexamples": eq2b[:5]}, claim=True),
        _check("commutation.single_loops_vs_triangles", not loop_tri, {"counterexamples": loop_tri[:5]}, claim=True),
        _check("commutation.crossing_loops_anticommute", not cross, {"counterexamples": cross[:5]}, claim=True),
        _check(
            "commutation.up_down_gram_rows_even",
            all(r % 2 == 0 for r in row_sums),
            {"row_sums": sorted(set(row_sums))},
            claim=True,
        ),
        _check("commutation.frustration_pattern", not frustration, {"counterexamples": frustration[:5]}, claim=True),
    ]


def parameter_checks(code: CodeStructure) -> list[Check]:
    p = code.params
    computed = {"gauge_rank": p.gauge_rank, "s": p.s, "g": p.g, "k": p.k, "k_stab": p.k_stab}
    out = []
    for q, claimed in p.claimed.items():
        out.append(
            _check(
                f"params.{q}_closed_form",
                computed[q] == claimed,
                {"computed": computed[q], "claimed": claimed},
                claim=True,
            )
        )
    out.append(_check("params.g_integral", float(p.g).is_integer(), {"g": p.g}))
    out.append(
        _check(
            "params.k_matches_centraliser",
            p.k == p.independent_logical_qubits,
            {"k": p.k, "from_centraliser": p.independent_logical_qubits},
        )
    )
    return out


def logical_checks(code: CodeStructure) -> list[Check]:
    bare = logical_algebra_violations(code.bare_logicals[:1], code.stabilisers, code.gauge)
    bare_central = all(op.commutes_with(g) for t in code.bare_logicals for op in t.ops() for g in code.gauge)
    dressed = logical_algebra_violations(code.dressed_logicals, code.stabilisers, code.gauge)
    logical_class = all(
        classify(op, code).kind is ErrorKind.LOGICAL for t in code.dressed_logicals for op in t.ops()
    )
    return [
        _check("logicals.bare_commute_with_gauge", bare_central),
        _check("logicals.bare_algebra", not bare, {"violations": bare[:5]}, claim=True),
        _check("logicals.dressed_algebra", not dressed, {"violations": dressed[:5]}, claim=True),
        _check("logicals.dressed_are_logical", logical_class),
    ]


def census_checks(summary: ClassificationSummary, code: CodeStructure) -> list[Check]:
    out = []
    L = code.L
    for w in (1, 2):
        c = summary.census(w)
        if c is None:
            out.append(Check(f"detect.weight{w}_all_detectable", "skipped", True))
        else:
            out.append(
                _check(
                    f"detect.weight{w}_all_detectable",
                    c.detectable == c.candidates,
                    c.as_dict(),
                    claim=True,
                )
            )
    c3 = summary.census(3)
    if c3 is None:
        out.append(Check("detect.weight3_undetectable_are_dilated_triangles", "skipped", True))
    else:
        fam = {t.bits for t in dilated_triangles(code)}
        gauge3 = summary.gauge_reps.get(3, [])
        outside = [p.to_text() for p in gauge3 if p.bits not in fam]
        missing = len(fam - {p.bits for p in gauge3})
        out.append(
            _check(
                "detect.weight3_undetectable_are_dilated_triangles",
                not outside and not missing,
                {"gauge": c3.gauge, "family_size": len(fam), "outside_family": outside[:10], "family_not_found": missing},
                claim=True,
            )
        )
        if L > 3:
            out.append(_check("detect.weight3_no_logical", c3.logical == 0, c3.as_dict(), claim=True))
        else:
            loops = {loop_operator(a, i, code.lat).bits for a in LOOP_KINDS for i in range(L)}
            found = {p.bits for p in summary.logical_reps.get(3, [])}
            out.append(_check("detect.weight3_logicals_include_loops_at_L3", loops <= found, {"logical": c3.logical}))
    c4 = summary.census(4)
    if c4 is None:
        out.append(Check("detect.weight4_two_triangle_witnesses", "skipped", True))
    else:
        fam = dilated_triangles(code)
        counts = {"1": 0, "2": 0, "3": 0, "none": 0}
        needing_three = []
        for p in summary.gauge_reps.get(4, []):
            wit = triangle_witness(p, fam)
            key = "none" if wit is None else str(len(wit))
            counts[key] += 1
            if wit is not None and len(wit) == 3 and len(needing_three) < 10:
                needing_three.append(p.to_text())
        if L > 4:
            out.append(_check("detect.weight4_no_logical", c4.logical == 0, c4.as_dict(), claim=True))
        out.append(
            _check(
                "detect.weight4_two_triangle_witnesses",
                counts["3"] == 0 and counts["none"] == 0 and counts["1"] == 0,
                {"witness_size_counts": counts, "three_triangle_examples": needing_three},
                claim=True,
            )
        )
        shapes = two_triangle_shapes(code)
        gauge4 = {p.bits for p in summary.gauge_reps.get(4, [])}
        shape_ok = all(p.bits in gauge4 for ps in shapes.values() for p in ps)
        out.append(
            _check(
                "detect.weight4_diamond_parallelogram_are_gauge",
                shape_ok and all(shapes.values()),
                {k: len(v) for k, v in shapes.items()},
                claim=True,
            )
        )
    return out


def verify_all(
    code: CodeStructure,
    max_weight: int | None = None,
    distance_budget: int | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
    threads: int = 1,
) -> VerificationReport:
    """Run every invariant suite that fits the budgets; deterministic output."""
    L = code.L
    max_weight = default_max_weight(L) if max_weight is None else max_weight
    distance_budget = default_distance_budget(L) if distance_budget is None else distance_budget
    checks: list[Check] = []
    checks += lattice_checks(code)
    checks += pauli_checks(code)
    checks += group_checks(code)
    checks += commutation_checks(code)
    checks += parameter_checks(code)
    checks += logical_checks(code)

    summary = classify_exhaustive(code, max_weight, cap=cap, threads=threads)
    checks += census_checks(summary, code)
    if not summary.complete:
        checks.append(Check("detect.census_budget", "skipped", False, {"cap": cap}))

    budget = min(distance_budget, code.n)
    if sum(candidate_count(code.n, w) for w in range(1, budget + 1)) > cap:
        checks.append(Check("distance.equals_L", "skipped", True, {"budget_weight": budget}))
        cert = None
    else:
        cert = certify_distance(code, budget, threads=threads)
        if cert.d is None:
            ok = cert.lower_bound <= L
            checks.append(
                Check(
                    "distance.equals_L",
                    "pass" if ok else "fail",
                    True,
                    {"bound_only": True, **cert.as_dict()},
                )
            )
        else:
            checks.append(_check("distance.equals_L", cert.d == L, cert.as_dict(), claim=True))
    results = {
        "params": code.params.as_dict(),
        "classification": summary.as_dict(),
        "distance": cert.as_dict() if cert else None,
    }
    return VerificationReport(L, checks, results)
