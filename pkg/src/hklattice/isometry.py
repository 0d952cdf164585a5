"""Isometries of integral lattices: validation, order classification,
orthogonal groups of definite lattices and orbit decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from math import lcm
from typing import Sequence

from . import intmat
from .enumeration import short_vectors
from .errors import (
    IndefiniteLattice,
    LatticeMismatch,
    NotAnIsometry,
    NotUnimodular,
    RankLimitExceeded,
    ValidationError,
)
from .lattice import IntegralLattice, LatticeVector

DEFAULT_RANK_LIMIT = 8


@dataclass(frozen=True)
class Isometry:
    """Columns of ``matrix`` are the images of the basis vectors."""

    lattice: IntegralLattice
    matrix: tuple[tuple[int, ...], ...]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    @property
    def det(self) -> int:
        return intmat.det(self.as_lists())

    def apply(self, v: LatticeVector) -> LatticeVector:
        if v.lattice != self.lattice:
            raise LatticeMismatch("vector and isometry live in different lattices")
        return LatticeVector(self.lattice, tuple(intmat.matvec(self.as_lists(), v.coords)))

    def apply_coords(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(intmat.matvec(self.as_lists(), v))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if other.lattice != self.lattice:
            raise LatticeMismatch("isometries of different lattices")
        return Isometry(self.lattice, _freeze(intmat.matmul(self.as_lists(), other.as_lists())))

    def inverse(self) -> "Isometry":
        return Isometry(self.lattice, _freeze(intmat.inverse_unimodular(self.as_lists())))

    def power(self, k: int) -> "Isometry":
        m = self.as_lists() if k >= 0 else intmat.inverse_unimodular(self.as_lists())
        return Isometry(self.lattice, _freeze(intmat.matpow(m, abs(k))))

    @property
    def is_identity(self) -> bool:
        return self.as_lists() == intmat.identity(len(self.matrix))

    def to_json(self) -> dict:
        return {"matrix": self.as_lists()}


def _freeze(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in m)


def make_isometry(lat: IntegralLattice, matrix) -> Isometry:
    n = lat.rank
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise ValidationError(f"isometry matrix must be {n}x{n}")
    m = [list(r) for r in matrix]
    g = lat.matrix()
    img = intmat.congruence(m, g)
    for i in range(n):
        for j in range(n):
            if img[i][j] != g[i][j]:
                raise NotAnIsometry(
                    f"(M^T G M - G)[{i}][{j}] = {img[i][j] - g[i][j]}",
                    entry=(i, j, img[i][j] - g[i][j]),
                )
    if abs(intmat.det(m)) != 1:
        # only reachable for degenerate lattices
        raise NotUnimodular(f"det M = {intmat.det(m)}")
    return Isometry(lat, _freeze(m))


# --- integer polynomials, coefficient lists highest degree first -----------

def _trim(p: list[int]) -> list[int]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def poly_divmod(p: list[int], d: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial."""
    if d[0] != 1:
        raise ValueError("divisor must be monic")
    p = list(p)
    if len(p) < len(d):
        return [0], _trim(p)
    q = []
    for i in range(len(p) - len(d) + 1):
        c = p[i]
        q.append(c)
        if c:
            for j in range(1, len(d)):
                p[i + j] -= c * d[j]
    rem = _trim(p[len(p) - len(d) + 1:]) if len(d) > 1 else [0]
    return q, rem


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@cache
def _cyclotomic(n: int) -> tuple[int, ...]:
    """The n-th cyclotomic polynomial, from ``t^n - 1 = prod_{d | n} Phi_d``."""
    p = [1] + [0] * (n - 1) + [-1]
    for d in range(1, n):
        if n % d == 0:
            p, r = poly_divmod(p, list(_cyclotomic(d)))
            assert r == [0]
    return tuple(p)


def cyclotomic(n: int) -> list[int]:
    return list(_cyclotomic(n))


def cyclotomic_orders(max_degree: int) -> list[int]:
    """All n with ``phi(n) <= max_degree`` (``phi(n) >= sqrt(n/2)`` bounds the search)."""
    return [n for n in range(1, 2 * max_degree * max_degree + 3) if euler_phi(n) <= max_degree]


def strip_cyclotomic(p: list[int]) -> tuple[list[int], list[int]]:
    """Split ``p`` into its cyclotomic factors (as orders, with multiplicity) and the rest."""
    orders = []
    rest = list(p)
    for n in cyclotomic_orders(len(p) - 1):
        phi = cyclotomic(n)
        while len(rest) >= len(phi):
            q, r = poly_divmod(rest, phi)
            if r != [0]:
                break
            orders.append(n)
            rest = q
    return orders, rest


def has_root_off_unit_circle(p: list[int]) -> bool:
    """Exact test for a monic integer polynomial with nonzero constant term.

    By Kronecker, such a polynomial with every root on the unit circle is a
    product of cyclotomic polynomials; so a root lies off the circle iff some
    factor is left after stripping every cyclotomic factor.
    """
    if p[0] != 1 or p[-1] == 0:
        raise ValueError("expected a monic polynomial with nonzero constant term")
    _, rest = strip_cyclotomic(p)
    return len(rest) > 1


@dataclass(frozen=True)
class OrderClassification:
    finite: bool
    order: int | None = None
    witness_polynomial: tuple[int, ...] | None = None
    witness_power: int | None = None

    @property
    def kind(self) -> str:
        return "Finite" if self.finite else "Infinite"

    def to_json(self) -> dict:
        doc = {"kind": self.kind}
        if self.finite:
            doc["order"] = self.order
        else:
            doc["witness_polynomial"] = list(self.witness_polynomial) if self.witness_polynomial else None
            if self.witness_power is not None:
                doc["witness_power"] = self.witness_power
        return doc


def _irreducible_factor(p: list[int]) -> list[int]:
    import sympy

    t = sympy.Symbol("t")
    _, factors = sympy.factor_list(sympy.Poly(p, t))
    # deterministic: lowest degree, then coefficients
    polys = sorted(([int(c) for c in f.all_coeffs()] for f, _ in factors), key=lambda c: (len(c), c))
    return polys[0]


def classify_order(g: Isometry) -> OrderClassification:
    m = g.as_lists()
    n = len(m)
    cp = intmat.charpoly(m)
    _, rest = strip_cyclotomic(cp)
    if len(rest) > 1:
        return OrderClassification(False, witness_polynomial=tuple(_irreducible_factor(rest)))
    bound = 1
    for k in cyclotomic_orders(n):
        bound = lcm(bound, k)
    if intmat.matpow(m, bound) != intmat.identity(n):
        # all eigenvalues are roots of unity but g is not semisimple
        return OrderClassification(False, witness_power=bound)
    order = bound
    for p in _primes_of(bound):
        while order % p == 0 and intmat.matpow(m, order // p) == intmat.identity(n):
            order //= p
    return OrderClassification(True, order=order)


def _primes_of(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def verify_classification(g: Isometry, c: OrderClassification) -> bool:
    m = g.as_lists()
    ident = intmat.identity(len(m))
    if c.finite:
        if intmat.matpow(m, c.order) != ident:
            return False
        return all(intmat.matpow(m, k) != ident for k in range(1, c.order))
    if c.witness_polynomial is not None:
        w = list(c.witness_polynomial)
        _, r = poly_divmod(intmat.charpoly(m), w)
        return r == [0] and has_root_off_unit_circle(w)
    # witness_power is a multiple of every order a finite-order g could have
    _, rest = strip_cyclotomic(intmat.charpoly(m))
    bound = 1
    for k in cyclotomic_orders(len(m)):
        bound = lcm(bound, k)
    return len(rest) == 1 and c.witness_power % bound == 0 and intmat.matpow(m, c.witness_power) != ident


def orthogonal_group(lat: IntegralLattice, rank_limit: int = DEFAULT_RANK_LIMIT) -> list[Isometry]:
    """Full ``O(L)`` of a definite lattice, by backtracking over basis images.

    Each basis vector ``e_i`` must go to a vector of norm ``gram[i][i]`` whose
    pairings with the images already chosen match ``gram[i][:i]``; any full
    assignment is automatically invertible over Z.
    """
    if lat.rank > rank_limit:
        raise RankLimitExceeded(f"rank {lat.rank} exceeds limit {rank_limit}")
    return list(_orthogonal_group(lat))


@cache
def _orthogonal_group(lat: IntegralLattice) -> tuple[Isometry, ...]:
    if lat.is_positive_definite:
        g = lat.matrix()
    elif lat.is_negative_definite:
        g = [[-x for x in r] for r in lat.gram]
    else:
        raise IndefiniteLattice(f"signature {lat.signature.as_tuple()} is not definite")
    n = len(g)
    by_norm: dict[int, list[tuple[int, ...]]] = {}
    candidates = []
    for i in range(n):
        d = g[i][i]
        if d not in by_norm:
            allv = short_vectors(g, d)
            by_norm[d] = [v for v in allv if _q(g, v, v) == d]
        candidates.append(by_norm[d])
    images: list[tuple[int, ...]] = []
    found = []

    def rec(i: int) -> None:
        if i == n:
            cols = [list(c) for c in zip(*images)]
            found.append(Isometry(lat, _freeze(cols)))
            return
        for v in candidates[i]:
            if all(_q(g, v, images[j]) == g[i][j] for j in range(i)):
                images.append(v)
                rec(i + 1)
                images.pop()

    rec(0)
    found.sort(key=lambda h: h.matrix)
    return tuple(found)


def _q(g, v, w) -> int:
    n = len(v)
    return sum(v[i] * g[i][j] * w[j] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class Orbit:
    representative: LatticeVector
    members: tuple[LatticeVector, ...]

    def to_json(self) -> dict:
        return {
            "representative": list(self.representative.coords),
            "size": len(self.members),
            "members": [list(v.coords) for v in self.members],
        }


def orbits(vectors: Sequence[LatticeVector], group: Sequence[Isometry]) -> list[Orbit]:
    """Partition ``vectors`` under ``group``; representatives are lexicographic minima."""
    if not vectors:
        return []
    lat = vectors[0].lattice
    for v in vectors:
        if v.lattice != lat:
            raise LatticeMismatch("vectors from different lattices")
    for h in group:
        if h.lattice != lat:
            raise LatticeMismatch("isometry from a different lattice")
    mats = [h.as_lists() for h in group]
    pool = {v.coords for v in vectors}
    seen: set[tuple[int, ...]] = set()
    result = []
    for start in sorted(pool):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for m in mats:
                    w = tuple(intmat.matvec(m, v))
                    if w not in orbit:
                        orbit.add(w)
                        nxt.append(w)
            frontier = nxt
        members = sorted(orbit & pool)
        seen.update(members)
        result.append(
            Orbit(LatticeVector(lat, members[0]), tuple(LatticeVector(lat, c) for c in members))
        )
    return result
