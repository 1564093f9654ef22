"""Assembly of the Majorana-XYZ subsystem code on an L x L torus."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any

from .gf2 import OperatorSet, centraliser_in_pauli_group, centre
from .lattice import Lattice, SiteCoord, loop_support, triangle_supports
from .pauli import PauliWord, multiply, symplectic_product

SCHEMA_VERSION = "1"


class ConstructionError(RuntimeError):
    pass


class ClosedFormMismatch(ConstructionError):
    pass


@dataclass(frozen=True)
class LogicalTriple:
    X: PauliWord
    Y: PauliWord
    Z: PauliWord
    line_index: int
    # gauge-member coefficient masks for the X, Y and Z dressings
    dressing: tuple[int, int, int] = (0, 0, 0)

    def ops(self) -> tuple[PauliWord, PauliWord, PauliWord]:
        return (self.X, self.Y, self.Z)


def closed_forms(L: int) -> dict[str, Any]:
    """Counting formulas as stated for the code, evaluated at size L."""
    s = 3 * L - 2 - ((L + 1) % 2)
    gauge_rank = 2 * (L - 1) * (L - 1) + 1
    return {
        "gauge_rank": gauge_rank,
        "s": s,
        "g": (gauge_rank - s) / 2,
        "k": L // 2,
        "k_stab": L * L - 3 * L + 2 + ((L + 1) % 2),
    }


@dataclass
class CodeParameters:
    n: int
    gauge_rank: int
    s: int
    g: float
    k: float
    k_stab: int
    centraliser_dim: int
    logical_triples: int
    d_certified: int | None = None
    d_lower_bound: int | None = None
    claimed: dict[str, Any] = field(default_factory=dict)
    discrepancies: list[dict[str, Any]] = field(default_factory=list)

    @property
    def independent_logical_qubits(self) -> float:
        return (self.centraliser_dim - self.s) / 2

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "gauge_rank": self.gauge_rank,
            "s": self.s,
            "g": _num(self.g),
            "k": _num(self.k),
            "k_stab": self.k_stab,
            "centraliser_dim": self.centraliser_dim,
            "independent_logical_qubits": _num(self.independent_logical_qubits),
            "logical_triples": self.logical_triples,
            "d_certified": self.d_certified,
            "d_lower_bound": self.d_lower_bound,
            "claimed": {k: _num(v) for k, v in self.claimed.items()},
            "discrepancies": [dict(d) for d in self.discrepancies],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CodeParameters":
        return cls(
            n=d["n"],
            gauge_rank=d["gauge_rank"],
            s=d["s"],
            g=d["g"],
            k=d["k"],
            k_stab=d["k_stab"],
            centraliser_dim=d["centraliser_dim"],
            logical_triples=d["logical_triples"],
            d_certified=d.get("d_certified"),
            d_lower_bound=d.get("d_lower_bound"),
            claimed=dict(d.get("claimed", {})),
            discrepancies=[dict(x) for x in d.get("discrepancies", [])],
        )


def _num(v: float | int) -> float | int:
    if isinstance(v, float) and v.is_integer():
        return int(v)
    return v


@dataclass
class CodeStructure:
    lat: Lattice
    gauge: OperatorSet
    stabilisers: OperatorSet
    bare_logicals: list[LogicalTriple]
    dressed_logicals: list[LogicalTriple]
    params: CodeParameters
    # centre elements outside the span of the consecutive double loops
    extra_central: list[PauliWord] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.lat.n

    @property
    def L(self) -> int:
        return self.lat.L

    def to_dict(self) -> dict[str, Any]:
        m = len(self.gauge)
        return {
            "version": SCHEMA_VERSION,
            "L": self.L,
            "n": self.n,
            "gauge_generators": [g.to_text() for g in self.gauge],
            "stabiliser_generators": [s.to_text() for s in self.stabilisers],
            "extra_central": [p.to_text() for p in self.extra_central],
            "bare_logicals": [_triple_to_dict(t, m) for t in self.bare_logicals],
            "dressed_logicals": [_triple_to_dict(t, m) for t in self.dressed_logicals],
            "params": self.params.as_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CodeStructure":
        if d.get("version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported code schema version {d.get('version')!r}")
        lat = Lattice(d["L"])
        n = lat.n
        if d.get("n", n) != n:
            raise ValueError(f"n={d['n']} inconsistent with L={lat.L}")
        parse = lambda t: PauliWord.from_text(t, n)  # noqa: E731
        return cls(
            lat=lat,
            gauge=OperatorSet([parse(t) for t in d["gauge_generators"]], n),
            stabilisers=OperatorSet([parse(t) for t in d["stabiliser_generators"]], n),
            bare_logicals=[_triple_from_dict(t, n) for t in d["bare_logicals"]],
            dressed_logicals=[_triple_from_dict(t, n) for t in d["dressed_logicals"]],
            params=CodeParameters.from_dict(d["params"]),
            extra_central=[parse(t) for t in d.get("extra_central", [])],
        )

    @classmethod
    def from_json(cls, text: str) -> "CodeStructure":
        return cls.from_dict(json.loads(text))


def _mask_to_str(mask: int, length: int) -> str:
    return "".join("1" if (mask >> j) & 1 else "0" for j in range(length))


def _str_to_mask(s: str) -> int:
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")


def _triple_to_dict(t: LogicalTriple, m: int) -> dict[str, Any]:
    return {
        "line_index": t.line_index,
        "X": t.X.to_text(),
        "Y": t.Y.to_text(),
        "Z": t.Z.to_text(),
        "dressing": {a: _mask_to_str(v, m) for a, v in zip("XYZ", t.dressing)},
    }


def _triple_from_dict(d: dict[str, Any], n: int) -> LogicalTriple:
    return LogicalTriple(
        X=PauliWord.from_text(d["X"], n),
        Y=PauliWord.from_text(d["Y"], n),
        Z=PauliWord.from_text(d["Z"], n),
        line_index=d["line_index"],
        dressing=tuple(_str_to_mask(d["dressing"][a]) for a in "XYZ"),
    )


# -- operators -----------------------------------------------------------------


def loop_operator(kind: str, line_index: int, lat: Lattice) -> PauliWord:
    return PauliWord.from_letters(loop_support(kind, line_index, lat), lat.n)


def double_loop(kind: str, i: int, lat: Lattice) -> PauliWord:
    return multiply(loop_operator(kind, i, lat), loop_operator(kind, i + 1, lat))


def consecutive_double_loops(lat: Lattice) -> list[PauliWord]:
    """The 3(L-1) double loops on lines (i, i+1) for i = 0..L-2."""
    return [double_loop(kind, i, lat) for kind in "XYZ" for i in range(lat.L - 1)]


def triple_cross_loop(lat: Lattice, i: int = 0) -> PauliWord:
    """One loop of each letter through site (i, 0); central at even L."""
    out = multiply(loop_operator("X", 0, lat), loop_operator("Y", i, lat))
    return multiply(out, loop_operator("Z", i, lat)).hermitian()


def build_gauge_generators(lat: Lattice) -> OperatorSet:
    """All 2 L^2 unit triangles, up and down interleaved by anchor."""
    return OperatorSet([PauliWord.from_letters(t, lat.n) for t in triangle_supports(lat)], lat.n)


def build_stabiliser_generators(
    lat: Lattice, gauge: OperatorSet
) -> tuple[OperatorSet, list[PauliWord]]:
    """Centre of the gauge group, expressed with double loops where possible.

    Returns the stabiliser basis and the central elements that are not
    generated by consecutive double loops. Known named elements (the triple
    cross loop) are tried before raw echelon rows so reports stay readable.
    """
    ctr = centre(gauge)
    loops = consecutive_double_loops(lat)
    for dl in loops:
        if not ctr.in_span(dl):
            raise ConstructionError(f"double loop {dl} is not central in the gauge group")
    chosen: list[PauliWord] = []
    running = OperatorSet([], lat.n)
    for dl in loops:
        if not running.in_span(dl):
            chosen.append(dl)
            running = OperatorSet(chosen, lat.n)
    extra = []
    named = [triple_cross_loop(lat)]
    for c in named + list(ctr):
        if not ctr.in_span(c):
            continue
        if not running.in_span(c):
            chosen.append(c)
            extra.append(c)
            running = OperatorSet(chosen, lat.n)
    if running.rank != ctr.rank:
        raise ConstructionError("stabiliser basis does not span the centre")
    return running, extra


def build_bare_logicals(lat: Lattice) -> list[LogicalTriple]:
    """Double cross loops on lines 0, 2, 4, ...; floor(L/2) triples."""
    out = []
    for i in range(0, 2 * (lat.L // 2), 2):
        xi, yi, zi = (loop_operator(a, i, lat) for a in "XYZ")
        out.append(
            LogicalTriple(
                X=multiply(yi, zi).scaled(3),
                Y=multiply(xi, zi).scaled(1),
                Z=multiply(yi, xi).scaled(1),
                line_index=i,
            )
        )
    return out


def _line_distance(anchor: SiteCoord, line: int, L: int) -> tuple[int, int, int]:
    d = (anchor.row - line) % L
    return (min(d, L - d), anchor.row, anchor.col)


def _find_gauge_pairs(
    gauge: OperatorSet, lat: Lattice, lines: list[int | None]
) -> list[tuple[int, int] | None]:
    """Anticommuting triangle pairs, mutually commuting across pairs.

    ``lines[i]`` is the row the i-th pair should sit near, or None when no
    pair is needed at that slot.
    """
    anchors = [SiteCoord(*divmod(j // 2, lat.L)) for j in range(len(gauge))]
    chosen: list[int] = []
    pairs: list[tuple[int, int] | None] = []
    for line in lines:
        if line is None:
            pairs.append(None)
            continue
        order = sorted(range(len(gauge)), key=lambda j: (_line_distance(anchors[j], line, lat.L), j))

        def free(j: int) -> bool:
            return j not in chosen and all(gauge[j].commutes_with(gauge[c]) for c in chosen)

        a = next((j for j in order if free(j)), None)
        if a is None:
            raise ConstructionError("no free gauge triangle left for dressing")
        b = next((j for j in order if free(j) and not gauge[j].commutes_with(gauge[a])), None)
        if b is None:
            raise ConstructionError("no anticommuting partner left for dressing")
        chosen.extend((a, b))
        pairs.append((a, b))
    return pairs


def dress_logicals(
    bare: list[LogicalTriple], gauge: OperatorSet, lat: Lattice
) -> list[LogicalTriple]:
    """Multiply bare logicals by gauge elements so that different triples commute.

    With bare parts in the centraliser of the gauge group, the commutation of
    two dressed operators is the bare value plus the commutation of their
    gauge dressings. The dressings therefore have to realise a prescribed
    alternating form; it is built from triangle pairs (a_m, b_m) that
    anticommute within a pair and commute otherwise, using the triangular
    construction f_i = a_i + sum_{l<i} T[l][i] b_l.
    """
    k = len(bare)
    if k <= 1:
        return [replace(t, dressing=(0, 0, 0)) for t in bare]
    for t in bare:
        for op in t.ops():
            for g in gauge:
                if not op.commutes_with(g):
                    raise ConstructionError(f"bare logical {op} does not commute with {g}")
    elems = [t.X for t in bare] + [t.Z for t in bare]
    size = 2 * k
    target = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            want = 1 if i % k == j % k else 0  # X_i, Z_i must anticommute
            target[i][j] = symplectic_product(elems[i], elems[j]) ^ want
    lines = []
    for i in range(size):
        need_a = any(target[i][j] for j in range(i + 1, size))
        lines.append(bare[i % k].line_index if need_a else None)
    pairs = _find_gauge_pairs(gauge, lat, lines)
    masks = []
    for i in range(size):
        m = 0
        if pairs[i] is not None:
            m ^= 1 << pairs[i][0]
        for l in range(i):
            if target[l][i]:
                pl = pairs[l]
                if pl is None:
                    raise ConstructionError("dressing construction needs a missing gauge pair")
                m ^= 1 << pl[1]
        masks.append(m)
    out = []
    for i, t in enumerate(bare):
        mx, mz = masks[i], masks[i + k]
        X = multiply(t.X, gauge.product_of(mx))
        Z = multiply(t.Z, gauge.product_of(mz))
        Y = multiply(X, Z).scaled(1)
        out.append(LogicalTriple(X=X, Y=Y, Z=Z, line_index=t.line_index, dressing=(mx, mx ^ mz, mz)))
    return out


def logical_algebra_violations(
    triples: list[LogicalTriple], stabilisers: OperatorSet, gauge: OperatorSet
) -> list[str]:
    """Human-readable list of every broken logical commutation relation."""
    bad = []
    for i, t in enumerate(triples):
        ops = t.ops()
        for a in range(3):
            for b in range(a + 1, 3):
                if ops[a].commutes_with(ops[b]):
                    bad.append(f"qubit {i}: {'XYZ'[a]} and {'XYZ'[b]} commute")
        if not ops[1].same_pattern(multiply(ops[0], ops[2])):
            bad.append(f"qubit {i}: Y pattern is not X*Z")
        for a, op in zip("XYZ", ops):
            for s in stabilisers:
                if not op.commutes_with(s):
                    bad.append(f"qubit {i}: {a} anticommutes with stabiliser {s}")
                    break
            if gauge.in_span(op):
                bad.append(f"qubit {i}: {a} lies in the gauge group")
        for j in range(i + 1, len(triples)):
            for a, op in zip("XYZ", ops):
                for b, other in zip("XYZ", triples[j].ops()):
                    if not op.commutes_with(other):
                        bad.append(f"qubits {i},{j}: {a}{i} anticommutes with {b}{j}")
    return bad


def code_parameters(code: CodeStructure, strict: bool = False) -> dict[str, Any]:
    """Counts as computed, with any disagreement against the closed forms listed.

    ``strict=True`` raises :class:`ClosedFormMismatch` on the first disagreement.
    """
    p = code.params
    if strict and p.discrepancies:
        d = p.discrepancies[0]
        raise ClosedFormMismatch(
            f"{d['quantity']}: computed {d['computed']} but closed form gives {d['claimed']}"
        )
    return {"n": p.n, "k": _num(p.k), "g": _num(p.g), "s": p.s, "k_stab": p.k_stab}


def _compute_params(lat: Lattice, gauge: OperatorSet, stabs: OperatorSet, triples: int) -> CodeParameters:
    n = lat.n
    s = stabs.rank
    g = (gauge.rank - s) / 2
    k = n - g - s
    cdim = centraliser_in_pauli_group(gauge).rank
    params = CodeParameters(
        n=n,
        gauge_rank=gauge.rank,
        s=s,
        g=g,
        k=k,
        k_stab=n - s,
        centraliser_dim=cdim,
        logical_triples=triples,
        claimed=closed_forms(lat.L),
    )
    computed = {"gauge_rank": gauge.rank, "s": s, "g": g, "k": k, "k_stab": n - s}
    for q, claimed in params.claimed.items():
        if computed[q] != claimed:
            params.discrepancies.append(
                {"quantity": q, "computed": _num(computed[q]), "claimed": _num(claimed)}
            )
    return params


def build_code(L: int | Lattice) -> CodeStructure:
    lat = L if isinstance(L, Lattice) else Lattice(L)
    gauge = build_gauge_generators(lat)
    stabs, extra = build_stabiliser_generators(lat, gauge)
    bare = build_bare_logicals(lat)
    dressed = dress_logicals(bare, gauge, lat)
    params = _compute_params(lat, gauge, stabs, len(bare))
    return CodeStructure(
        lat=lat,
        gauge=gauge,
        stabilisers=stabs,
        bare_logicals=bare,
        dressed_logicals=dressed,
        params=params,
        extra_central=extra,
    )
