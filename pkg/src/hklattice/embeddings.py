"""Primitive embeddings into definite lattices, counted up to the target's
orthogonal group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmat
from .enumeration import short_vectors
from .errors import IndefiniteTarget, SourceTooBig, ValidationError
from .isometry import DEFAULT_RANK_LIMIT, Isometry, orthogonal_group
from .lattice import IntegralLattice, make_lattice, twist


@dataclass(frozen=True)
class Embedding:
    source: IntegralLattice
    target: IntegralLattice
    matrix: tuple[tuple[int, ...], ...]  # target_rank x source_rank

    def __post_init__(self):
        m = [list(r) for r in self.matrix]
        if len(m) != self.target.rank or any(len(r) != self.source.rank for r in m):
            raise ValidationError("embedding matrix has the wrong shape")
        if intmat.congruence(m, self.target.matrix()) != self.source.matrix():
            raise ValidationError("embedding does not preserve the form")
        if not is_primitive_matrix(m):
            raise ValidationError("embedding image is not saturated")

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in zip(*self.matrix)]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.matrix for x in row)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": [list(r) for r in self.matrix],
        }


def is_primitive_matrix(m) -> bool:
    """Columns are independent and span a saturated sublattice."""
    k = len(m[0]) if m else 0
    divs = intmat.smith_diagonal(m)
    return len(divs) == k and all(d == 1 for d in divs)


@dataclass(frozen=True)
class EmbeddingClasses:
    embeddings: tuple[Embedding, ...]
    representatives: tuple[Embedding, ...]
    orbit_sizes: tuple[int, ...]
    group_order: int

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)

    def to_json(self) -> dict:
        return {
            "embedding_count": len(self.embeddings),
            "orbit_count": self.orbit_count,
            "group_order": self.group_order,
            "orbits": [
                {"representative": [list(r) for r in e.matrix], "size": s}
                for e, s in zip(self.representatives, self.orbit_sizes)
            ],
        }


def _definite_target(target: IntegralLattice) -> int:
    """+1 / -1 for positive / negative definite targets."""
    if target.is_positive_definite:
        return 1
    if target.is_negative_definite:
        return -1
    raise IndefiniteTarget(f"target of signature {target.signature.as_tuple()} is not definite")


def _act(g: Isometry, cols: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Matrix (rows) of ``g`` applied to each column."""
    images = [g.apply_coords(c) for c in cols]
    return tuple(zip(*images))


def _classes(found: list[Embedding], group: list[Isometry], source, target) -> EmbeddingClasses:
    pool = {e.matrix for e in found}
    seen: set = set()
    reps, sizes = [], []
    for e in sorted(found, key=lambda e: e.flat()):
        if e.matrix in seen:
            continue
        cols = e.columns()
        orbit = {_act(g, cols) for g in group}
        seen |= orbit
        rep = min(orbit, key=lambda m: tuple(x for row in m for x in row))
        reps.append(Embedding(source, target, rep))
        sizes.append(len(orbit & pool))
    order = sorted(range(len(reps)), key=lambda i: reps[i].flat())
    return EmbeddingClasses(
        tuple(sorted(found, key=lambda e: e.flat())),
        tuple(reps[i] for i in order),
        tuple(sizes[i] for i in order),
        len(group),
    )


def rank1_embeddings(m: int, target: IntegralLattice, rank_limit: int = DEFAULT_RANK_LIMIT) -> EmbeddingClasses:
    """Embeddings ``<m> -> target``, i.e. primitive vectors of norm ``m``.

    The orbit count is computed independently by Burnside's lemma and
    cross-checked against the explicit orbit partition.
    """
    sign = _definite_target(target)
    group = orthogonal_group(target, rank_limit)
    source = make_lattice([[m]], f"<{m}>")
    if m == 0 or (m > 0) != (sign > 0):
        return EmbeddingClasses((), (), (), len(group))
    g = target.matrix() if sign > 0 else [[-x for x in r] for r in target.gram]
    vecs = [
        v for v in short_vectors(g, sign * m)
        if target.q(v) == m and intmat.content(v) == 1
    ]
    found = [Embedding(source, target, tuple((x,) for x in v)) for v in vecs]
    result = _classes(found, group, source, target)
    fixed = sum(sum(1 for v in vecs if h.apply_coords(v) == v) for h in group)
    burnside = Fraction(fixed, len(group))
    if burnside != result.orbit_count:
        raise AssertionError(f"Burnside count {burnside} != orbit partition {result.orbit_count}")
    return result


def primitive_embeddings(
    source: IntegralLattice, target: IntegralLattice, rank_limit: int = DEFAULT_RANK_LIMIT
) -> EmbeddingClasses:
    """All primitive embeddings ``source -> target`` and their ``O(target)`` classes."""
    sign = _definite_target(target)
    if source.rank > target.rank:
        raise SourceTooBig(f"source rank {source.rank} > target rank {target.rank}")
    group = orthogonal_group(target, rank_limit)
    g = target.matrix() if sign > 0 else [[-x for x in r] for r in target.gram]
    s = source.matrix() if sign > 0 else [[-x for x in r] for r in source.gram]
    k = source.rank
    cache: dict[int, list[tuple[int, ...]]] = {}
    cands = []
    for i in range(k):
        d = s[i][i]
        if d not in cache:
            cache[d] = [v for v in short_vectors(g, d) if _b(g, v, v) == d] if d > 0 else []
        cands.append(cache[d])
    images: list[tuple[int, ...]] = []
    found: list[Embedding] = []

    def rec(i: int) -> None:
        if i == k:
            mat = [list(r) for r in zip(*images)]
            if is_primitive_matrix(mat):
                found.append(Embedding(source, target, tuple(tuple(r) for r in mat)))
            return
        for v in cands[i]:
            if all(_b(g, v, images[j]) == s[i][j] for j in range(i)):
                images.append(v)
                rec(i + 1)
                images.pop()

    rec(0)
    return _classes(found, group, source, target)


def _b(g, v, w) -> int:
    n = len(v)
    return sum(v[i] * g[i][j] * w[j] for i in range(n) for j in range(n))


def ks_embedding_candidates(lat: IntegralLattice) -> list[IntegralLattice]:
    """The lattice and its 2-twist, the two candidates tried for a primitive
    embedding into an even unimodular lattice."""
    return [lat, twist(lat, 2)]
