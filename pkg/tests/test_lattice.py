from __future__ import annotations

import itertools

import pytest

from majorana_xyz.lattice import (
    LOOP_KINDS,
    Lattice,
    SiteCoord,
    dilated_triangle_supports,
    down_triangle_support,
    loop_support,
    scaled_triangle_support,
    site_coord,
    site_index,
    triangle_supports,
    up_triangle_support,
)
from majorana_xyz.pauli import PauliWord


def test_small_lattice_rejected():
    with pytest.raises(ValueError):
        Lattice(2)


def test_site_index_round_trip():
    lat = Lattice(5)
    for j in range(lat.n):
        assert site_index(site_coord(j, lat), lat) == j
    assert site_index(SiteCoord(-1, 5), lat) == site_index(SiteCoord(4, 0), lat)
    with pytest.raises(ValueError):
        site_coord(25, lat)


def test_unit_triangles_have_one_of_each_letter():
    lat = Lattice(4)
    for a in lat.coords():
        for sup in (up_triangle_support(a, lat), down_triangle_support(a, lat)):
            assert sorted(sup.values()) == ["X", "Y", "Z"]


@pytest.mark.parametrize("L", [3, 4, 5, 6])
def test_every_site_in_six_triangles(L):
    lat = Lattice(L)
    counts = [0] * lat.n
    for t in triangle_supports(lat):
        for s in t:
            counts[s] += 1
    assert counts == [6] * lat.n


@pytest.mark.parametrize("L", [3, 4, 5, 6])
def test_each_site_meets_each_letter_twice(L):
    lat = Lattice(L)
    per_site = {j: [] for j in range(lat.n)}
    for t in triangle_supports(lat):
        for s, a in t.items():
            per_site[s].append(a)
    for letters in per_site.values():
        assert sorted(letters) == ["X", "X", "Y", "Y", "Z", "Z"]


def test_scale_one_is_unit_triangle():
    lat = Lattice(5)
    a = SiteCoord(2, 3)
    assert scaled_triangle_support(a, 1, "up", lat) == up_triangle_support(a, lat)
    assert scaled_triangle_support(a, 1, "down", lat) == down_triangle_support(a, lat)


def test_scale_bounds():
    lat = Lattice(4)
    with pytest.raises(ValueError):
        scaled_triangle_support(SiteCoord(0, 0), 0, "up", lat)
    with pytest.raises(ValueError):
        scaled_triangle_support(SiteCoord(0, 0), 4, "up", lat)
    with pytest.raises(ValueError):
        scaled_triangle_support(SiteCoord(0, 0), 1, "left", lat)


@pytest.mark.parametrize("L", [3, 4, 5, 6])
def test_dilated_family_size(L):
    lat = Lattice(L)
    fam = dilated_triangle_supports(lat)
    assert len(fam) == L * L * (L - 1)
    assert len({tuple(sorted(t.items())) for t in fam}) == len(fam)


def test_down_triangle_is_complementary_up_triangle():
    lat = Lattice(5)
    for m in range(1, 5):
        down = scaled_triangle_support(SiteCoord(0, 0), m, "down", lat)
        up = scaled_triangle_support(SiteCoord(m, 0), 5 - m, "up", lat)
        assert down == up


@pytest.mark.parametrize("L", [3, 4, 5])
def test_loops(L):
    lat = Lattice(L)
    for a in LOOP_KINDS:
        lines = [set(loop_support(a, i, lat)) for i in range(L)]
        assert all(len(s) == L for s in lines)
        assert set().union(*lines) == set(range(lat.n))
    for (a, i), (b, j) in itertools.product(itertools.product("XYZ", range(L)), repeat=2):
        if a != b:
            assert len(set(loop_support(a, i, lat)) & set(loop_support(b, j, lat))) == 1
    with pytest.raises(ValueError):
        loop_support("W", 0, lat)


def test_y_loop_direction_is_the_only_commuting_diagonal():
    # Brute force at L=3: of the two diagonal directions only one gives Y
    # loops commuting with every unit triangle.
    lat = Lattice(3)
    tris = [PauliWord.from_letters(t, lat.n) for t in triangle_supports(lat)]
    anti = {s: "Y" for s in (site_index(SiteCoord(r, -r), lat) for r in range(3))}
    main = {s: "Y" for s in (site_index(SiteCoord(r, r), lat) for r in range(3))}
    assert PauliWord.from_letters(anti, lat.n).bits == PauliWord.from_letters(loop_support("Y", 0, lat), lat.n).bits
    assert all(PauliWord.from_letters(anti, lat.n).commutes_with(t) for t in tris)
    assert not all(PauliWord.from_letters(main, lat.n).commutes_with(t) for t in tris)
