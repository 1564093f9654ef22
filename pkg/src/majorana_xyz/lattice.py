"""Geometry of the L x L triangular torus.

Sites use skewed (row, col) axes at 60 degrees, so every triangle and loop
is plain modular arithmetic on the pair. Site ``(r, c)`` has linear index
``r * L + c``.

Supports are returned as ``{site_index: letter}`` dicts with letters drawn
from ``"XYZ"``; :mod:`majorana_xyz.pauli` turns them into operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, NamedTuple

LetterMap = Dict[int, str]

LOOP_KINDS = ("X", "Y", "Z")


@dataclass(frozen=True)
class Lattice:
    L: int

    def __post_init__(self) -> None:
        if not isinstance(self.L, int) or self.L < 3:
            raise ValueError(f"lattice size must be an integer >= 3, got {self.L!r}")

    @property
    def n(self) -> int:
        return self.L * self.L

    def coords(self) -> Iterator["SiteCoord"]:
        for r in range(self.L):
            for c in range(self.L):
                yield SiteCoord(r, c)


class SiteCoord(NamedTuple):
    row: int
    col: int


def site_index(c: SiteCoord, lat: Lattice) -> int:
    L = lat.L
    return (c[0] % L) * L + (c[1] % L)


def site_coord(index: int, lat: Lattice) -> SiteCoord:
    if not 0 <= index < lat.n:
        raise ValueError(f"site index {index} out of range for n={lat.n}")
    return SiteCoord(*divmod(index, lat.L))


def _offset(anchor: SiteCoord, dr: int, dc: int, lat: Lattice) -> int:
    return site_index(SiteCoord(anchor[0] + dr, anchor[1] + dc), lat)


def up_triangle_support(anchor: SiteCoord, lat: Lattice) -> LetterMap:
    """Y on the anchor, X on its same-row neighbour, Z on the next-row vertex."""
    return scaled_triangle_support(anchor, 1, "up", lat)


def down_triangle_support(anchor: SiteCoord, lat: Lattice) -> LetterMap:
    """Z on the anchor, then X and Y on the adjacent pair of the next row."""
    return scaled_triangle_support(anchor, 1, "down", lat)


def scaled_triangle_support(
    anchor: SiteCoord, scale: int, orientation: str, lat: Lattice
) -> LetterMap:
    """Unit triangle letter pattern with every displacement multiplied by ``scale``."""
    m = scale
    if not 1 <= m < lat.L:
        raise ValueError(f"scale must satisfy 1 <= m < L={lat.L}, got {m}")
    if orientation == "up":
        return {
            _offset(anchor, 0, 0, lat): "Y",
            _offset(anchor, 0, m, lat): "X",
            _offset(anchor, m, 0, lat): "Z",
        }
    if orientation == "down":
        return {
            _offset(anchor, 0, 0, lat): "Z",
            _offset(anchor, m, -m, lat): "X",
            _offset(anchor, m, 0, lat): "Y",
        }
    raise ValueError(f"orientation must be 'up' or 'down', got {orientation!r}")


def loop_support(kind: str, line_index: int, lat: Lattice) -> LetterMap:
    """Weight-L single-letter loop.

    Z runs along a row, X along a column and Y along the anti-diagonal
    ``row + col == line_index (mod L)``; these are the only directions in which
    each letter commutes with every triangle.
    """
    L = lat.L
    i = line_index % L
    if kind == "Z":
        sites = [site_index(SiteCoord(i, c), lat) for c in range(L)]
    elif kind == "X":
        sites = [site_index(SiteCoord(r, i), lat) for r in range(L)]
    elif kind == "Y":
        sites = [site_index(SiteCoord(r, i - r), lat) for r in range(L)]
    else:
        raise ValueError(f"loop kind must be one of X, Y, Z; got {kind!r}")
    return {s: kind for s in sites}


def triangle_supports(lat: Lattice) -> list[LetterMap]:
    """All 2 L^2 unit triangles, interleaved up/down in row-major anchor order."""
    out = []
    for anchor in lat.coords():
        out.append(up_triangle_support(anchor, lat))
        out.append(down_triangle_support(anchor, lat))
    return out


def dilated_triangle_supports(lat: Lattice) -> list[LetterMap]:
    """Every distinct unit or dilated triangle (scales 1..L-1, both orientations).

    A down triangle of scale m coincides with an up triangle of scale L-m, so
    the list has L^2 (L-1) entries.
    """
    seen = set()
    out = []
    for m in range(1, lat.L):
        for orientation in ("up", "down"):
            for anchor in lat.coords():
                sup = scaled_triangle_support(anchor, m, orientation, lat)
                key = tuple(sorted(sup.items()))
                if key not in seen:
                    seen.add(key)
                    out.append(sup)
    return out
