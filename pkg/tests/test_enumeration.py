import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hklattice import errors
from hklattice.enumeration import (
    NormQuery,
    certify_nonexistence,
    rank2_solutions,
    vectors_of_norm,
    verify_certificate,
)
from hklattice.lattice import make_lattice, standard
from oracles import brute_force_vectors, residue_solutions

D2 = make_lattice([[2, 0], [0, 2]])


def coords(vs):
    return [v.coords for v in vs]


def test_vectors_of_norm_examples():
    # brute force over |x|, |y| <= 1
    assert coords(vectors_of_norm(NormQuery(D2, 2))) == brute_force_vectors(D2.matrix(), 2, 1)
    assert coords(vectors_of_norm(NormQuery(D2, 2))) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert vectors_of_norm(NormQuery(D2, 1)) == []


def test_vectors_errors(ht):
    with pytest.raises(errors.ValidationError):
        NormQuery(ht, 0)
    with pytest.raises(errors.IndefiniteLattice):
        vectors_of_norm(NormQuery(ht, 6, box_bound=5))
    with pytest.raises(errors.NegativeTargetInDefinite):
        vectors_of_norm(NormQuery(D2, -2))


def test_negative_definite():
    lat = make_lattice([[-2, 1], [1, -2]])
    got = coords(vectors_of_norm(NormQuery(lat, -2)))
    assert got == brute_force_vectors(lat.matrix(), -2, 3)
    assert len(got) == 6


def test_primitive_only():
    got = coords(vectors_of_norm(NormQuery(D2, 8, primitive_only=True)))
    assert got == []
    assert coords(vectors_of_norm(NormQuery(D2, 8))) == [(-2, 0), (0, -2), (0, 2), (2, 0)]


def _box_brute(lat, m, box):
    g = np.array(lat.matrix(), dtype=np.int64)
    r = np.arange(-box, box + 1, dtype=np.int64)
    x, y = np.meshgrid(r, r, indexing="ij")
    q = g[0, 0] * x * x + 2 * g[0, 1] * x * y + g[1, 1] * y * y
    return sorted(zip(x[q == m].tolist(), y[q == m].tolist()))


def test_rank2_no_isotropic_no_minus_two(ht):
    assert coords(rank2_solutions(ht, 0, 1000)) == [(0, 0)] == _box_brute(ht, 0, 1000)
    assert rank2_solutions(ht, 0, 1000, primitive_only=True) == []
    assert rank2_solutions(ht, -2, 1000) == [] and _box_brute(ht, -2, 1000) == []


def test_rank2_minus_ten(ht):
    got = coords(rank2_solutions(ht, -10, 5))
    assert got == _box_brute(ht, -10, 5)
    for v in [(3, -2), (1, -2), (-3, 2), (-1, 2)]:
        assert v in got


@pytest.mark.parametrize("gram", [[[0, 1], [1, 0]], [[0, 3], [3, 0]], [[2, 0], [0, 0]], [[6, 6], [6, 2]], [[1, 2], [2, -3]]])
@pytest.mark.parametrize("m", [-10, -2, 0, 1, 6])
def test_rank2_matches_box(gram, m):
    lat = make_lattice(gram)
    assert coords(rank2_solutions(lat, m, 12)) == _box_brute(lat, m, 12)


def test_rank2_wrong_rank():
    with pytest.raises(errors.WrongRank):
        rank2_solutions(standard("E8"), 2, 3)


def test_certificates(ht):
    c = certify_nonexistence(ht, -2)
    assert c.modulus == 3
    # every one of the 9 residue pairs mod 3 fails
    assert residue_solutions(6, 12, 2, -2, 3, False) == []
    assert all(residue_solutions(6, 12, 2, -2, m, False) for m in (2,))
    assert verify_certificate(c)

    c0 = certify_nonexistence(ht, 0)
    assert c0.primitive and verify_certificate(c0)
    assert residue_solutions(6, 12, 2, 0, c0.modulus, True) == []
    # least such modulus
    assert all(residue_solutions(6, 12, 2, 0, m, True) for m in range(2, c0.modulus))

    with pytest.raises(errors.NotFound):
        certify_nonexistence(standard("U"), 0)


def test_tampered_certificate_fails(ht):
    from dataclasses import replace

    c = certify_nonexistence(ht, -2)
    assert not verify_certificate(replace(c, modulus=2))
    assert not verify_certificate(replace(c, target=0, primitive=False))


@given(
    st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6)),
    st.integers(-12, 12),
)
@settings(max_examples=80, deadline=None)
def test_certificate_soundness(abc, m):
    a, b, c = abc
    lat = make_lattice([[a, b], [b, c]])
    try:
        cert = certify_nonexistence(lat, m, 24)
    except errors.NotFound:
        return
    assert verify_certificate(cert)
    assert rank2_solutions(lat, m, 10 * cert.modulus, primitive_only=(m == 0)) == []


@st.composite
def definite(draw):
    n = draw(st.integers(1, 4))
    b = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)]
    g = [[sum(b[k][i] * b[k][j] for k in range(n)) + (i == j) for j in range(n)] for i in range(n)]
    sign = draw(st.sampled_from([1, -1]))
    return [[sign * x for x in row] for row in g]


@given(definite(), st.integers(0, 20))
@settings(max_examples=40, deadline=None)
def test_completeness_against_brute_force(g, m):
    lat = make_lattice(g)
    target = m if lat.is_positive_definite else -m
    got = coords(vectors_of_norm(NormQuery(lat, target)))
    assert got == brute_force_vectors(g, target, 20 if lat.rank <= 2 else None)
    assert set(got) == {tuple(-x for x in v) for v in got}
