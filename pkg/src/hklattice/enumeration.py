"""Vector enumeration: complete lists in definite lattices, box search and
modular nonexistence certificates in rank 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import intmat
from .errors import (
    IndefiniteLattice,
    NegativeTargetInDefinite,
    NotFound,
    ValidationError,
    WrongRank,
)
from .lattice import IntegralLattice, LatticeVector, make_lattice


@dataclass(frozen=True)
class NormQuery:
    lattice: IntegralLattice
    target_norm: int
    primitive_only: bool = False
    box_bound: int | None = None

    def __post_init__(self):
        if not self.lattice.is_definite and self.box_bound is None:
            raise ValidationError("box_bound is required for an indefinite lattice")
        if self.box_bound is not None and self.box_bound < 1:
            raise ValidationError("box_bound must be positive")

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "target_norm": self.target_norm,
            "primitive_only": self.primitive_only,
            "box_bound": self.box_bound,
        }


def short_vectors(gram, bound: int) -> list[tuple[int, ...]]:
    """All integer ``x`` with ``x^T gram x <= bound`` for a positive definite gram.

    Depth-first over coordinates from last to first using the exact rational
    decomposition of the form into a weighted sum of squares.
    """
    n = len(gram)
    d, mu = intmat.ldl_positive(gram)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, budget: Fraction) -> None:
        if i < 0:
            out.append(tuple(x))
            return
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        ratio = budget / d[i]
        k = math.isqrt(math.floor(ratio)) + 1
        lo = math.floor(-c) - k
        hi = math.ceil(-c) + k
        for xi in range(lo, hi + 1):
            t = xi + c
            used = d[i] * t * t
            if used <= budget:
                x[i] = xi
                rec(i - 1, budget - used)
        x[i] = 0

    if bound >= 0:
        rec(n - 1, Fraction(bound))
    return out


def vectors_of_norm(query: NormQuery) -> list[LatticeVector]:
    lat = query.lattice
    m = query.target_norm
    if lat.is_positive_definite:
        gram = lat.matrix()
    elif lat.is_negative_definite:
        gram = [[-x for x in row] for row in lat.gram]
        m = -m
    else:
        raise IndefiniteLattice(f"signature {lat.signature.as_tuple()} is not definite")
    if m < 0:
        raise NegativeTargetInDefinite(f"norm {query.target_norm} has the wrong sign for this lattice")
    found = [
        v for v in short_vectors(gram, m)
        if _quad(gram, v) == m and (not query.primitive_only or intmat.content(v) == 1)
    ]
    found.sort()
    return [LatticeVector(lat, v) for v in found]


def _quad(g, v) -> int:
    n = len(v)
    return sum(v[i] * g[i][j] * v[j] for i in range(n) for j in range(n))


def _binary_coeffs(lat: IntegralLattice) -> tuple[int, int, int]:
    if lat.rank != 2:
        raise WrongRank(f"rank {lat.rank} lattice; rank 2 required")
    (a, b), (_, c) = lat.gram
    return a, b, c


def rank2_solutions(lat: IntegralLattice, m: int, box: int, primitive_only: bool = False) -> list[LatticeVector]:
    """All ``(x, y)`` with ``|x|, |y| <= box`` and ``a x^2 + 2b xy + c y^2 = m``.

    One exact quadratic solve per ``x`` (or per ``y``) instead of a full box scan.
    """
    a, b, c = _binary_coeffs(lat)
    sols: set[tuple[int, int]] = set()
    if c != 0:
        for x in range(-box, box + 1):
            for y in _roots(c, 2 * b * x, a * x * x - m):
                if abs(y) <= box:
                    sols.add((x, y))
    elif a != 0:
        for y in range(-box, box + 1):
            for x in _roots(a, 2 * b * y, -m):
                if abs(x) <= box:
                    sols.add((x, y))
    else:
        # q = 2b xy
        for x in range(-box, box + 1):
            for y in range(-box, box + 1):
                if 2 * b * x * y == m:
                    sols.add((x, y))
    if primitive_only:
        sols = {s for s in sols if math.gcd(*s) == 1}
    return [LatticeVector(lat, s) for s in sorted(sols)]


def _roots(a: int, b: int, c: int) -> list[int]:
    """Integer roots of ``a t^2 + b t + c`` with ``a != 0``."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    roots = []
    for num in {-b + s, -b - s}:
        if num % (2 * a) == 0:
            roots.append(num // (2 * a))
    return roots


def _prime_factors(n: int) -> list[int]:
    ps = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


@dataclass(frozen=True)
class NonexistenceCertificate:
    """``q(x, y) == target (mod modulus)`` has no admissible residue solution.

    For ``target == 0`` only primitive solutions are ruled out: residue pairs
    divisible by a common prime factor of the modulus are excluded, since a
    primitive integral vector never reduces to one.
    """

    gram: tuple[tuple[int, int], tuple[int, int]]
    target: int
    modulus: int
    primitive: bool
    excluded_primes: tuple[int, ...] = ()
    residues_checked: int = 0
    statement: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {
            "gram": [list(r) for r in self.gram],
            "target": self.target,
            "modulus": self.modulus,
            "primitive": self.primitive,
            "excluded_primes": list(self.excluded_primes),
            "residues_checked": self.residues_checked,
            "statement": self.statement,
        }


def _admissible(x: int, y: int, primes) -> bool:
    return all(x % p or y % p for p in primes)


def _has_residue_solution(a, b, c, m, modulus, primes) -> tuple[bool, int]:
    checked = 0
    t = m % modulus
    for x in range(modulus):
        ax = a * x * x
        bx = 2 * b * x
        for y in range(modulus):
            if primes and not _admissible(x, y, primes):
                continue
            checked += 1
            if (ax + bx * y + c * y * y - t) % modulus == 0:
                return True, checked
    return False, checked


def certify_nonexistence(lat: IntegralLattice, m: int, max_modulus: int = 64) -> NonexistenceCertificate:
    """Least modulus ``M <= max_modulus`` whose residues rule out ``q(v) = m``.

    ``m == 0`` is treated as the primitive (isotropic vector) question.
    """
    a, b, c = _binary_coeffs(lat)
    primitive = m == 0
    for modulus in range(2, max_modulus + 1):
        primes = tuple(_prime_factors(modulus)) if primitive else ()
        found, checked = _has_residue_solution(a, b, c, m, modulus, primes)
        if not found:
            what = "primitive " if primitive else ""
            return NonexistenceCertificate(
                gram=((a, b), (b, c)),
                target=m,
                modulus=modulus,
                primitive=primitive,
                excluded_primes=primes,
                residues_checked=checked,
                statement=(
                    f"{a}x^2 + {2 * b}xy + {c}y^2 = {m} has no {what}integral solution: "
                    f"no admissible residue pair mod {modulus}"
                ),
            )
    raise NotFound(f"no modulus <= {max_modulus} certifies q = {m}; box evidence is not a proof")


def verify_certificate(cert: NonexistenceCertificate) -> bool:
    """Re-check a certificate by enumerating every residue pair afresh."""
    (a, b), (b2, c) = cert.gram
    if b != b2 or cert.modulus < 2:
        return False
    primes = tuple(_prime_factors(cert.modulus)) if cert.primitive else ()
    if set(primes) != set(cert.excluded_primes):
        return False
    for x, y in product(range(cert.modulus), repeat=2):
        if cert.primitive and not all(x % p or y % p for p in primes):
            continue
        if (a * x * x + 2 * b * x * y + c * y * y - cert.target) % cert.modulus == 0:
            return False
    return True


def certificate_lattice(cert: NonexistenceCertificate) -> IntegralLattice:
    return make_lattice([list(r) for r in cert.gram])
