import math

import numpy as np
import pytest

from conftest import HT_GRAM
from hklattice import errors
from hklattice.cones import (
    Chamber,
    PositiveCone,
    WallSpec,
    apply_isometry,
    chamber_of,
    chamber_orbit,
    chambers_disjoint,
    check_wall_bound,
    det2,
    make_chamber,
    positive_cone_component,
    walls_near,
)
from hklattice.isometry import make_isometry
from hklattice.lattice import make_lattice, standard
from oracles import brute_force_vectors

PSI = [[11, 2], [-6, -1]]
NEF = ((7, -3), (1, 3))


def _walls_by_brute_force(gram, norm, div, box, seed):
    """Rays of D^perp in the seed's component for primitive D of the given type."""
    g = np.array(gram)
    out = set()
    for d in brute_force_vectors(gram, norm, box):
        if math.gcd(*d) != 1:
            continue
        w = g @ np.array(d)
        if math.gcd(*(int(x) for x in w)) != div:
            continue
        r = np.array([w[1], -w[0]])
        if r @ g @ np.array(seed) < 0:
            r = -r
        k = math.gcd(int(r[0]), int(r[1]))
        out.add((int(r[0]) // k, int(r[1]) // k))
    return out


def test_positive_cone_examples(ht):
    c = positive_cone_component(ht, (1, 0))
    assert c.contains((1, 0)) and c.contains((7, -3)) and not c.contains((-1, 0))
    assert not c.contains((1, -2))
    u = standard("U")
    assert positive_cone_component(u, (1, 1)).contains((2, 1))
    with pytest.raises(errors.SeedNotPositive):
        positive_cone_component(ht, (1, -2))
    with pytest.raises(errors.NotHyperbolic):
        positive_cone_component(make_lattice([[2, 0], [0, 2]]), (1, 0))
    with pytest.raises(errors.WrongRank):
        positive_cone_component(make_lattice([[2]]), (1,))


def test_isotropic_rays():
    u = standard("U")
    assert positive_cone_component(u, (1, 1)).isotropic_rays() == ((1, 0), (0, 1))
    ht = make_lattice(HT_GRAM)
    # discriminant 24 is not a square
    assert positive_cone_component(ht, (1, 0)).isotropic_rays() is None


def test_wallspec_validation():
    with pytest.raises(errors.ValidationError):
        WallSpec(2, 1)
    with pytest.raises(errors.ValidationError):
        WallSpec(-2, 0)


def test_walls_near_full_component(ht, ht_specs):
    cone = positive_cone_component(ht, (1, 0))
    walls = walls_near(ht, ht_specs, cone, 20)
    classes = {w.class_vector for w in walls}
    assert (3, -2) in classes and (1, -2) in classes
    assert all(w.norm == -10 and w.div == 2 for w in walls)
    want = _walls_by_brute_force(HT_GRAM, -10, 2, 20, (1, 0))
    assert {w.ray for w in walls} == want
    rays = [w.ray for w in walls]
    assert all(det2(a, b) > 0 for a, b in zip(rays, rays[1:]))


def test_walls_near_empty_specs(ht):
    assert walls_near(ht, [], positive_cone_component(ht, (1, 0)), 20) == []


def test_walls_near_narrow_sector(ht):
    sector = make_chamber(ht, (2, -1), (2, 1))
    walls = walls_near(ht, [WallSpec(-10, 2)], sector, 20)
    assert walls
    for w in walls:
        assert sector.contains_strictly(w.ray)
    everything = walls_near(ht, [WallSpec(-10, 2)], positive_cone_component(ht, (1, 0)), 20)
    assert {w.class_vector for w in walls} == {
        w.class_vector for w in everything if sector.contains_strictly(w.ray)
    }


def test_wall_sign_convention(ht, ht_specs):
    for w in walls_near(ht, ht_specs, positive_cone_component(ht, (1, 0)), 10):
        turn = (-w.ray[1], w.ray[0])
        assert ht.b(w.class_vector, turn) > 0
        assert ht.b(w.class_vector, w.ray) == 0


def test_nef_chamber(ht, ht_specs):
    res = chamber_of(ht, (1, 0), ht_specs, 50)
    assert {res.chamber.ray1, res.chamber.ray2} == set(NEF)
    assert (res.chamber.ray1, res.chamber.ray2) == NEF
    assert {w.class_vector for w in res.walls} == {(3, -2), (1, -2)}
    assert res.stable_since == 3
    assert all(ht.q(r) == 60 for r in NEF)


def test_chamber_u_no_walls():
    u = standard("U")
    res = chamber_of(u, (1, 1), [], 10)
    assert (res.chamber.ray1, res.chamber.ray2) == ((1, 0), (0, 1))
    assert res.walls == (None, None) and res.stable_since == 0


def test_chamber_errors(ht, ht_specs):
    with pytest.raises(errors.SeedNotPositive):
        chamber_of(ht, (3, -2), ht_specs, 50)
    with pytest.raises(errors.SeedOnWall):
        chamber_of(ht, (7, -3), ht_specs, 50)
    with pytest.raises(errors.IrrationalBoundary):
        chamber_of(ht, (1, 0), [], 50)
    with pytest.raises(errors.WrongRank):
        chamber_of(make_lattice([[2]]), (1,), ht_specs, 5)


@pytest.mark.parametrize("box", [10, 50, 200])
def test_monotone_stability(ht, ht_specs, box):
    res = chamber_of(ht, (1, 0), ht_specs, box)
    assert (res.chamber.ray1, res.chamber.ray2) == NEF


def test_smaller_boxes_never_narrower(ht, ht_specs):
    prev = None
    for box in range(3, 30):
        c = chamber_of(ht, (1, 0), ht_specs, box).chamber
        if prev is not None:
            # larger boxes can only shrink the chamber
            assert det2(prev.ray1, c.ray1) >= 0 and det2(c.ray2, prev.ray2) >= 0
        prev = c


@pytest.mark.parametrize("seed", [(1, 0), (2, 1), (3, -1), (11, -6), (1, 5), (10, -3)])
def test_containment_and_wall_exclusion(ht, ht_specs, seed):
    if ht.q(seed) <= 0:
        pytest.skip("seed not positive")
    res = chamber_of(ht, seed, ht_specs, 40)
    c = res.chamber
    assert c.contains_strictly(seed)
    cone = positive_cone_component(ht, seed)
    for w in walls_near(ht, ht_specs, cone, 40):
        assert not c.contains_strictly(w.ray)


def test_apply_isometry(ht):
    nef = make_chamber(ht, *NEF)
    g = make_isometry(ht, PSI)
    img = apply_isometry(g, nef)
    assert {img.ray1, img.ray2} == {(71, -39), (17, -9)}
    assert all(ht.q(r) == 60 for r in (img.ray1, img.ray2))
    ident = make_isometry(ht, [[1, 0], [0, 1]])
    assert apply_isometry(ident, nef) == nef
    minus = make_isometry(ht, [[-1, 0], [0, -1]])
    with pytest.raises(errors.ComponentSwapped):
        apply_isometry(minus, nef, correct_component=False)
    assert apply_isometry(minus, nef) == nef


def test_equivariance(ht, ht_specs):
    g = make_isometry(ht, PSI)
    base = chamber_of(ht, (1, 0), ht_specs, 50).chamber
    for k in (1, 2, -1):
        h = g.power(k)
        moved = chamber_of(ht, h.apply_coords((1, 0)), ht_specs, 400).chamber
        assert moved == apply_isometry(h, base)


def test_chambers_disjoint_examples(ht):
    nef = make_chamber(ht, *NEF)
    img = make_chamber(ht, (71, -39), (17, -9))
    assert chambers_disjoint(nef, img)
    assert not chambers_disjoint(nef, nef)
    u = standard("U")
    a, b = make_chamber(u, (1, 0), (1, 1)), make_chamber(u, (1, 1), (0, 1))
    assert chambers_disjoint(a, b) and chambers_disjoint(b, a)
    overlap = make_chamber(u, (2, 1), (0, 1))
    assert not chambers_disjoint(a, overlap)


def test_chamber_orientation(ht):
    with pytest.raises(errors.ValidationError):
        Chamber(ht, (1, 3), (7, -3))
    assert make_chamber(ht, (1, 3), (7, -3)) == Chamber(ht, (7, -3), (1, 3))


def test_orbit_ten(ht):
    g = make_isometry(ht, PSI)
    rep = chamber_orbit(g, make_chamber(ht, *NEF), 10)
    assert len(rep.chambers) == 11
    assert rep.pairwise_disjoint
    assert set(rep.ray_norms) == {60}
    assert rep.fixed_slope_polynomial == (2, 12, 6)
    # every chamber is the image of the previous one
    for a, b in zip(rep.chambers, rep.chambers[1:]):
        assert {g.apply_coords(a.ray1), g.apply_coords(a.ray2)} == {b.ray1, b.ray2}


def test_orbit_identity(ht):
    ident = make_isometry(ht, [[1, 0], [0, 1]])
    nef = make_chamber(ht, *NEF)
    rep = chamber_orbit(ident, nef, 3)
    assert rep.chambers == (nef,) * 4
    n = len(rep.chambers)
    assert not any(rep.disjoint[i][j] for i in range(n) for j in range(n))


def test_orbit_inverse(ht):
    g = make_isometry(ht, PSI).inverse()
    assert g.as_lists() == [[-1, -2], [6, 11]]
    rep = chamber_orbit(g, make_chamber(ht, *NEF), 3)
    assert len(rep.chambers) == 4 and rep.pairwise_disjoint
    fwd = chamber_orbit(g.inverse(), make_chamber(ht, *NEF), 3)
    # the two orbits only share the starting chamber
    assert set(rep.chambers) & set(fwd.chambers) == {make_chamber(ht, *NEF)}


def test_check_wall_bound(ht, ht_specs):
    walls = chamber_of(ht, (1, 0), ht_specs, 50).walls
    assert check_wall_bound(walls, 10)
    assert not check_wall_bound(walls, 9)
    assert check_wall_bound([], 0)


def test_region_lattice_mismatch(ht, ht_specs):
    u = standard("U")
    with pytest.raises(errors.LatticeMismatch):
        walls_near(ht, ht_specs, PositiveCone(u, (1, 1)), 5)
