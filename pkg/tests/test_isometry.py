import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, HT_GRAM
from hklattice import errors
from hklattice.enumeration import NormQuery, vectors_of_norm
from hklattice.isometry import (
    OrderClassification,
    classify_order,
    cyclotomic,
    has_root_off_unit_circle,
    make_isometry,
    orbits,
    orthogonal_group,
    poly_divmod,
    strip_cyclotomic,
    verify_classification,
)
from hklattice.lattice import make_lattice, standard
from oracles import isometries_by_brute_force, orbit_count_by_closure

PSI = [[11, 2], [-6, -1]]


def test_make_isometry_examples(ht):
    g = make_isometry(ht, PSI)
    m = np.array(PSI)
    assert (m.T @ np.array(HT_GRAM) @ m).tolist() == HT_GRAM
    assert g.det == 1
    assert make_isometry(ht, [[1, 0], [0, 1]]).is_identity


def test_not_an_isometry(ht):
    with pytest.raises(errors.NotAnIsometry) as exc:
        make_isometry(ht, [[1, 1], [0, 1]])
    # M^T G M = [[6,12],[12,20]]
    assert exc.value.entry[:2] == (0, 1)
    with pytest.raises(errors.ValidationError):
        make_isometry(ht, [[1, 0, 0]])


def test_psi_action(ht):
    g = make_isometry(ht, PSI)
    assert g.apply_coords((1, 0)) == (11, -6)
    assert g.apply_coords((0, 1)) == (2, -1)
    assert g.inverse().as_lists() == [[-1, -2], [6, 11]]
    assert (g @ g.inverse()).is_identity
    assert g.power(-2) == g.inverse() @ g.inverse()


def test_classify_examples(ht):
    ident = make_isometry(ht, [[1, 0], [0, 1]])
    c = classify_order(ident)
    assert c.finite and c.order == 1
    c = classify_order(make_isometry(ht, [[-1, 0], [0, -1]]))
    assert c.finite and c.order == 2
    g = make_isometry(ht, PSI)
    c = classify_order(g)
    assert not c.finite
    assert c.witness_polynomial == (1, -10, 1)
    assert verify_classification(g, c)
    assert c.to_json() == {"kind": "Infinite", "witness_polynomial": [1, -10, 1]}


def test_classify_finite_orders():
    a2 = make_lattice([[2, 1], [1, 2]])
    orders = sorted({classify_order(h).order for h in orthogonal_group(a2)})
    # dihedral group of order 12
    assert orders == [1, 2, 3, 6]
    for h in orthogonal_group(a2):
        c = classify_order(h)
        assert verify_classification(h, c)
        assert np.array_equal(
            np.linalg.matrix_power(np.array(h.as_lists()), c.order), np.identity(2, dtype=int)
        )


def test_unipotent_is_infinite():
    # Eichler transvection in U + <-2>: e isotropic, f orthogonal to e
    lat = make_lattice([[0, 1, 0], [1, 0, 0], [0, 0, -2]])
    g = make_isometry(lat, [[1, 1, 2], [0, 1, 0], [0, 1, 1]])
    c = classify_order(g)
    assert not c.finite and c.witness_polynomial is None
    assert verify_classification(g, c)
    assert not g.power(c.witness_power).is_identity


def test_verify_rejects_wrong_claims(ht):
    g = make_isometry(ht, PSI)
    assert not verify_classification(g, OrderClassification(True, order=2))
    assert not verify_classification(g, OrderClassification(False, witness_polynomial=(1, -1)))
    minus = make_isometry(ht, [[-1, 0], [0, -1]])
    assert not verify_classification(minus, OrderClassification(True, order=1))
    assert not verify_classification(minus, OrderClassification(True, order=4))


def test_polynomial_helpers():
    assert cyclotomic(1) == [1, -1]
    assert cyclotomic(6) == [1, -1, 1]
    assert cyclotomic(12) == [1, 0, -1, 0, 1]
    q, r = poly_divmod([1, 0, 0, -1], [1, -1])
    assert q == [1, 1, 1] and r == [0]
    cyc, rest = strip_cyclotomic([1, -10, 1])
    assert cyc == [] and rest == [1, -10, 1]
    assert has_root_off_unit_circle([1, -10, 1])
    assert not has_root_off_unit_circle([1, -1, 1])


@pytest.mark.parametrize(
    "gram,order",
    [([[2]], 2), ([[2, 0], [0, 2]], 8), ([[2, 1], [1, 2]], 12), ([[-2, 1], [1, -2]], 12)],
)
def test_orthogonal_group_orders(gram, order):
    lat = make_lattice(gram)
    group = orthogonal_group(lat)
    assert len(group) == order
    brute = isometries_by_brute_force(gram, 1)
    assert sorted(h.as_lists() for h in group) == sorted(brute)


def test_orthogonal_group_errors(ht):
    with pytest.raises(errors.IndefiniteLattice):
        orthogonal_group(ht)
    with pytest.raises(errors.RankLimitExceeded):
        orthogonal_group(standard("E8"), rank_limit=7)


@pytest.mark.parametrize("gram", CORPUS[:14])
def test_group_axioms(gram):
    lat = make_lattice(gram)
    group = orthogonal_group(lat)
    mats = {h.matrix for h in group}
    assert make_isometry(lat, [[int(i == j) for j in range(lat.rank)] for i in range(lat.rank)]).matrix in mats
    assert make_isometry(lat, [[-int(i == j) for j in range(lat.rank)] for i in range(lat.rank)]).matrix in mats
    assert len(group) % 2 == 0
    for h in group:
        assert h.inverse().matrix in mats
    rng = random.Random(len(gram))
    for _ in range(30):
        a, b = rng.choice(group), rng.choice(group)
        assert (a @ b).matrix in mats


@pytest.mark.parametrize("gram", CORPUS)
def test_form_preservation(gram):
    lat = make_lattice(gram)
    rng = random.Random(7)
    group = orthogonal_group(lat)
    for h in rng.sample(group, min(10, len(group))):
        for _ in range(5):
            v = lat.vector([rng.randint(-5, 5) for _ in range(lat.rank)])
            w = lat.vector([rng.randint(-5, 5) for _ in range(lat.rank)])
            assert lat.q(h.apply(v).coords) == lat.q(v.coords)
            assert lat.b(h.apply(v).coords, h.apply(w).coords) == lat.b(v.coords, w.coords)


def test_orbit_examples():
    d2 = make_lattice([[2, 0], [0, 2]])
    vecs = vectors_of_norm(NormQuery(d2, 2))
    orbs = orbits(vecs, orthogonal_group(d2))
    assert len(orbs) == 1 and orbs[0].representative.coords == (-1, 0)
    ident = [make_isometry(d2, [[1, 0], [0, 1]])]
    assert len(orbits(vecs, ident)) == 4
    d28 = make_lattice([[2, 0], [0, 8]])
    vecs = vectors_of_norm(NormQuery(d28, 2))
    assert [v.coords for v in vecs] == [(-1, 0), (1, 0)]
    assert len(orbits(vecs, orthogonal_group(d28))) == 1
    assert orbits([], ident) == []


def test_orbit_mismatch():
    d2 = make_lattice([[2, 0], [0, 2]])
    a2 = make_lattice([[2, 1], [1, 2]])
    with pytest.raises(errors.LatticeMismatch):
        orbits([d2.vector((1, 0))], orthogonal_group(a2))


@pytest.mark.parametrize("gram", CORPUS)
def test_orbits_match_closure_oracle(gram):
    lat = make_lattice(gram)
    group = orthogonal_group(lat)
    sign = 1 if lat.is_positive_definite else -1
    for m in (2, 4, 6):
        vecs = vectors_of_norm(NormQuery(lat, sign * m))
        got = orbits(vecs, group)
        want = orbit_count_by_closure([v.coords for v in vecs], [h.as_lists() for h in group])
        assert len(got) == want
        assert sum(len(o.members) for o in got) == len(vecs)
        for o in got:
            assert len(group) % len(o.members) == 0
            assert o.representative.coords == min(v.coords for v in o.members)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CORPUS[:12]), st.randoms(use_true_random=False))
def test_orbit_partition_order_independent(gram, rng):
    lat = make_lattice(gram)
    sign = 1 if lat.is_positive_definite else -1
    vecs = vectors_of_norm(NormQuery(lat, sign * 4))
    shuffled = list(vecs)
    rng.shuffle(shuffled)
    group = orthogonal_group(lat)
    a = [(o.representative.coords, tuple(v.coords for v in o.members)) for o in orbits(vecs, group)]
    b = [(o.representative.coords, tuple(v.coords for v in o.members)) for o in orbits(shuffled, group)]
    assert a == b
