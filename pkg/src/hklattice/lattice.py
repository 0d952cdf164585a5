"""Integral lattices given by Gram matrices, and the constructions built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import intmat
from .errors import (
    Degenerate,
    EmptyComplement,
    EmptyMatrix,
    LatticeMismatch,
    NonPositiveSquare,
    NonSymmetric,
    SignatureTooSmall,
    UnknownName,
    ValidationError,
    ZeroTwist,
    ZeroVector,
)


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    null: int = 0

    @property
    def rank(self) -> int:
        return self.positive + self.negative + self.null

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.null)


@dataclass(frozen=True, eq=True)
class IntegralLattice:
    gram: tuple[tuple[int, ...], ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        g = self.gram
        if len(g) == 0:
            raise EmptyMatrix("Gram matrix has rank 0")
        n = len(g)
        for i, row in enumerate(g):
            if len(row) != n:
                raise ValidationError(f"Gram matrix is not square (row {i} has length {len(row)})")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ValidationError(f"Gram entry {x!r} is not an integer")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise NonSymmetric(f"gram[{i}][{j}]={g[i][j]} but gram[{j}][{i}]={g[j][i]}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    @cached_property
    def determinant(self) -> int:
        return intmat.det(self.matrix())

    @cached_property
    def signature(self) -> Signature:
        pivots, null = intmat.symmetric_pivots(self.matrix())
        pos = sum(1 for p in pivots if p > 0)
        return Signature(pos, len(pivots) - pos, null)

    @property
    def is_positive_definite(self) -> bool:
        return self.signature.positive == self.rank

    @property
    def is_negative_definite(self) -> bool:
        return self.signature.negative == self.rank

    @property
    def is_definite(self) -> bool:
        return self.is_positive_definite or self.is_negative_definite

    def discriminant_group_order(self) -> int:
        d = self.determinant
        if d == 0:
            raise Degenerate("lattice is degenerate (det 0)")
        return abs(d)

    def vector(self, coords: Iterable[int]) -> "LatticeVector":
        return LatticeVector(self, tuple(coords))

    def basis(self) -> list["LatticeVector"]:
        return [self.vector(r) for r in intmat.identity(self.rank)]

    def b(self, v: Sequence, w: Sequence):
        """Bilinear form on raw coordinate sequences (ints or Fractions)."""
        g = self.gram
        return sum(v[i] * sum(g[i][j] * w[j] for j in range(len(w))) for i in range(len(v)))

    def q(self, v: Sequence):
        return self.b(v, v)

    def to_json(self) -> dict:
        doc = {"gram": self.matrix()}
        if self.label is not None:
            doc["label"] = self.label
        return doc

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"IntegralLattice{name}({self.matrix()})"


@dataclass(frozen=True)
class LatticeVector:
    lattice: IntegralLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise ValidationError(
                f"vector of length {len(self.coords)} in a lattice of rank {self.lattice.rank}"
            )

    @property
    def is_primitive(self) -> bool:
        return intmat.content(self.coords) == 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _same(self, other)
        return LatticeVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        _same(self, other)
        return LatticeVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "LatticeVector":
        return LatticeVector(self.lattice, tuple(k * a for a in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"LatticeVector{self.coords}"


def _same(v: LatticeVector, w: LatticeVector) -> None:
    if v.lattice != w.lattice:
        raise LatticeMismatch("vectors live in different lattices")


def make_lattice(gram, label: str | None = None) -> IntegralLattice:
    if gram is None or len(gram) == 0:
        raise EmptyMatrix("Gram matrix has rank 0")
    return IntegralLattice(tuple(tuple(row) for row in gram), label)


def bilinear(v: LatticeVector, w: LatticeVector) -> int:
    _same(v, w)
    return v.lattice.b(v.coords, w.coords)


def norm(v: LatticeVector) -> int:
    return v.lattice.q(v.coords)


def signature(lat: IntegralLattice) -> Signature:
    return lat.signature


def determinant(lat: IntegralLattice) -> int:
    return lat.determinant


def discriminant_group_order(lat: IntegralLattice) -> int:
    return lat.discriminant_group_order()


def direct_sum(l1: IntegralLattice, l2: IntegralLattice) -> IntegralLattice:
    n1, n2 = l1.rank, l2.rank
    rows = [list(r) + [0] * n2 for r in l1.gram] + [[0] * n1 + list(r) for r in l2.gram]
    label = f"{l1.label} + {l2.label}" if l1.label and l2.label else None
    return make_lattice(rows, label)


def twist(lat: IntegralLattice, n: int) -> IntegralLattice:
    if n == 0:
        raise ZeroTwist("twist by 0")
    label = f"{lat.label}({n})" if lat.label else None
    return make_lattice([[n * x for x in row] for row in lat.gram], label)


_E8 = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
]


def standard(name: str, param: int | None = None) -> IntegralLattice:
    """Standard lattices: ``U``, ``A<n>``, ``E8``, ``E8(-1)``, ``<m>``.

    ``<m>`` may be written ``"<6>"`` or passed as ``standard("<m>", 6)``;
    ``A_n`` as ``"A3"``, ``"A_3"`` or ``standard("A", 3)``.
    """
    key = name.strip().replace("_", "")
    if key == "U":
        return make_lattice([[0, 1], [1, 0]], "U")
    if key == "E8":
        return make_lattice(_E8, "E8")
    if key in ("E8(-1)", "E8(−1)"):
        return twist(make_lattice(_E8, "E8"), -1)
    if key.startswith("<") and key.endswith(">"):
        inner = key[1:-1]
        m = param if inner == "m" else _parse_int(inner, name)
        if m is None:
            raise UnknownName(f"{name}: missing parameter")
        return make_lattice([[m]], f"<{m}>")
    if key.startswith("A"):
        rest = key[1:]
        n = param if rest in ("", "n") else _parse_int(rest, name)
        if n is None or n < 1:
            raise UnknownName(f"{name}: A_n needs n >= 1")
        g = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        return make_lattice(g, f"A{n}")
    raise UnknownName(f"unknown standard lattice {name!r}")


def _parse_int(s: str, name: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UnknownName(f"unknown standard lattice {name!r}") from None


def orthogonal_complement(
    lat: IntegralLattice, generators: Sequence[LatticeVector]
) -> tuple[IntegralLattice, list[list[int]]]:
    """Saturated complement of the span of ``generators``.

    Returns the complement lattice with its induced Gram matrix and the
    embedding matrix whose rows are the complement basis in ``lat``
    coordinates (Hermite normal form).
    """
    for v in generators:
        if v.lattice != lat:
            raise LatticeMismatch("generator not in lattice")
    g = lat.matrix()
    rows = [intmat.matvec(g, v.coords) for v in generators]  # g symmetric: v^T g
    if not rows:
        basis = intmat.identity(lat.rank)
    else:
        basis = intmat.kernel_basis(rows, lat.rank)
    if not basis:
        raise EmptyComplement("generators span a subspace with trivial complement")
    gram = [[lat.b(u, v) for v in basis] for u in basis]
    return make_lattice(gram), basis


def divisibility(v: LatticeVector) -> int:
    if v.is_zero:
        raise ZeroVector("divisibility of the zero vector")
    row = intmat.matvec(v.lattice.matrix(), v.coords)
    d = 0
    for x in row:
        d = gcd(d, x)
    if d == 0:
        raise Degenerate("vector lies in the radical; b(v, L) = 0")
    return d


def is_period_point(lat: IntegralLattice, re: Sequence, im: Sequence) -> bool:
    """Whether ``re + i*im`` satisfies ``q(s) = 0`` and ``q(s, conj s) > 0``.

    Coordinates may be ints or Fractions.
    """
    if lat.signature.positive < 2:
        raise SignatureTooSmall(f"signature {lat.signature.as_tuple()} has positive part < 2")
    if len(re) != lat.rank or len(im) != lat.rank:
        raise ValidationError("period vector length does not match lattice rank")
    re = [Fraction(x) for x in re]
    im = [Fraction(x) for x in im]
    qr, qi = lat.q(re), lat.q(im)
    return qr == qi and lat.b(re, im) == 0 and qr > 0


def fujiki_degree(q_h: int, half_dim: int, c) -> Fraction:
    """Top self-intersection ``c * q_h ** half_dim`` of a class of square ``q_h``."""
    if q_h <= 0:
        raise NonPositiveSquare(f"q(h) = {q_h} is not positive")
    if half_dim < 1:
        raise ValidationError("half_dim must be positive")
    c = Fraction(c)
    if c <= 0:
        raise ValidationError("Fujiki constant must be positive")
    return c * q_h**half_dim
