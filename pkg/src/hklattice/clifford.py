"""Clifford algebra of an integral lattice and the trace polarization
``Phi_a(x, y) = Tr(rev(x) * y * a)``.

Convention: ``v * v = b(v, v)`` for the Gram bilinear form ``b``, so
``e_i e_j + e_j e_i = 2 gram[i][j]``. Basis monomials ``e_S`` are indexed by
bitmasks (bit ``i-1`` set for ``e_i``), factors in increasing index order.
Generators are numbered from 1 in the public API, matching ``e_1 .. e_n``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from . import intmat
from .errors import (
    AlgebraMismatch,
    B2TooSmall,
    BadTwistElement,
    DegenerateForm,
    NoOrthogonalPair,
    RankLimitExceeded,
    ValidationError,
)
from .lattice import IntegralLattice

log = logging.getLogger(__name__)

DEFAULT_RANK_LIMIT = 10


def _bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _add_into(acc: dict[int, int], terms: dict[int, int], k: int = 1) -> None:
    for m, c in terms.items():
        v = acc.get(m, 0) + k * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


class CliffordAlgebra:
    """``Cl(L)`` realized lazily through the straightening rewrite."""

    def __init__(self, lattice: IntegralLattice, rank_limit: int = DEFAULT_RANK_LIMIT):
        if lattice.rank > rank_limit:
            raise RankLimitExceeded(f"rank {lattice.rank} exceeds Clifford limit {rank_limit}")
        if lattice.rank > DEFAULT_RANK_LIMIT:
            log.warning("Clifford algebra of rank %d has dimension %d", lattice.rank, 2**lattice.rank)
        self.lattice = lattice
        self.n = lattice.rank
        self.dim = 1 << self.n
        self._g = lattice.matrix()
        self._gen_cache: dict[tuple[int, int], dict[int, int]] = {}
        self._mono_cache: dict[tuple[int, int], dict[int, int]] = {}
        self._rev_cache: dict[int, dict[int, int]] = {}
        self._tau_cache: dict[int, int] = {}

    def __eq__(self, other):
        return isinstance(other, CliffordAlgebra) and other.lattice == self.lattice

    def __hash__(self):
        return hash(self.lattice)

    # -- construction helpers ------------------------------------------------

    def element(self, coeffs: dict[int, int]) -> "CliffordElement":
        return CliffordElement(self, {m: c for m, c in coeffs.items() if c})

    def one(self) -> "CliffordElement":
        return self.element({0: 1})

    def scalar(self, k: int) -> "CliffordElement":
        return self.element({0: k})

    def e(self, *indices: int) -> "CliffordElement":
        """Product ``e_{i1} e_{i2} ...`` (1-based, any order, repeats allowed)."""
        x = self.one()
        for i in indices:
            if not 1 <= i <= self.n:
                raise ValidationError(f"generator index {i} out of range 1..{self.n}")
            x = x * self.element({1 << (i - 1): 1})
        return x

    def vector(self, coords) -> "CliffordElement":
        return self.element({1 << i: c for i, c in enumerate(coords)})

    def basis_masks(self) -> range:
        return range(self.dim)

    # -- straightening ---------------------------------------------------------

    def _gen_times(self, i: int, mask: int) -> dict[int, int]:
        """``e_i * e_mask`` with ``i`` zero-based."""
        key = (i, mask)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        bit = 1 << i
        low = mask & -mask
        if mask == 0 or bit < low:
            res = {mask | bit: 1}
        elif bit == low:
            res = {mask ^ bit: self._g[i][i]} if self._g[i][i] else {}
        else:
            t = low.bit_length() - 1
            rest = mask ^ low
            # e_i e_t = 2 g_it - e_t e_i, and e_t prepends to anything built from indices > t
            res = {}
            if self._g[i][t]:
                res[rest] = 2 * self._g[i][t]
            for m, c in self._gen_times(i, rest).items():
                _add_into(res, {m | low: -c})
        self._gen_cache[key] = res
        return res

    def mono_times(self, s: int, t: int) -> dict[int, int]:
        """``e_s * e_t`` for bitmasks ``s``, ``t``."""
        key = (s, t)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        x = {t: 1}
        for i in reversed(_bits(s)):
            y: dict[int, int] = {}
            for m, c in x.items():
                _add_into(y, self._gen_times(i, m), c)
            x = y
        self._mono_cache[key] = x
        return x

    def mono_reversal(self, s: int) -> dict[int, int]:
        hit = self._rev_cache.get(s)
        if hit is not None:
            return hit
        idx = _bits(s)
        x = {0: 1}
        # e_{sk} ... e_{s1}: build from the right, left-multiplying by s2, s3, ...
        for i in idx:
            y: dict[int, int] = {}
            for m, c in x.items():
                _add_into(y, self._gen_times(i, m), c)
            x = y
        self._rev_cache[s] = x
        return x

    def mono_trace(self, s: int) -> int:
        """Trace of left multiplication by ``e_s``, summed column by column."""
        hit = self._tau_cache.get(s)
        if hit is None:
            hit = sum(self.mono_times(s, t).get(t, 0) for t in range(self.dim))
            self._tau_cache[s] = hit
        return hit

    @cached_property
    def trace_pairing(self) -> list[list[int]]:
        """``[Tr(e_u e_v)]`` over all basis pairs."""
        n = self.dim
        return [
            [sum(c * self.mono_trace(m) for m, c in self.mono_times(u, v).items()) for v in range(n)]
            for u in range(n)
        ]

    def label(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "e" + "".join(str(i + 1) for i in _bits(mask))


@dataclass(frozen=True, eq=False)
class CliffordElement:
    algebra: CliffordAlgebra
    coeffs: dict[int, int]

    def _check(self, other: "CliffordElement") -> None:
        if other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different Clifford algebras")

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        _add_into(acc, other.coeffs)
        return CliffordElement(self.algebra, acc)

    def __sub__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        _add_into(acc, other.coeffs, -1)
        return CliffordElement(self.algebra, acc)

    def __neg__(self):
        return CliffordElement(self.algebra, {m: -c for m, c in self.coeffs.items()})

    def __rmul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return self.algebra.element({m: k * c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return multiply(self, other)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def to_json(self) -> dict:
        return {
            "terms": [
                {"subset": [i + 1 for i in _bits(m)], "coeff": c}
                for m, c in sorted(self.coeffs.items())
            ]
        }

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.algebra.label(m)}" for m, c in sorted(self.coeffs.items()))


def element_from_json(algebra: CliffordAlgebra, doc: dict) -> CliffordElement:
    acc: dict[int, int] = {}
    for term in doc["terms"]:
        x = algebra.e(*term["subset"])
        _add_into(acc, x.coeffs, int(term["coeff"]))
    return algebra.element(acc)


def clifford(lat: IntegralLattice, rank_limit: int = DEFAULT_RANK_LIMIT) -> CliffordAlgebra:
    return CliffordAlgebra(lat, rank_limit)


def multiply(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    x._check(y)
    alg = x.algebra
    acc: dict[int, int] = {}
    for s, a in x.coeffs.items():
        for t, b in y.coeffs.items():
            _add_into(acc, alg.mono_times(s, t), a * b)
    return CliffordElement(alg, acc)


def reversal(x: CliffordElement) -> CliffordElement:
    """The anti-automorphism fixing the lattice; reverses factor order.

    For an orthogonal Gram this is the sign ``(-1)^(k(k-1)/2)`` on ``e_S``
    with ``|S| = k``; in general the reversed word is straightened again.
    """
    acc: dict[int, int] = {}
    for s, c in x.coeffs.items():
        _add_into(acc, x.algebra.mono_reversal(s), c)
    return CliffordElement(x.algebra, acc)


def even_part(x: CliffordElement) -> CliffordElement:
    return CliffordElement(x.algebra, {m: c for m, c in x.coeffs.items() if m.bit_count() % 2 == 0})


def odd_part(x: CliffordElement) -> CliffordElement:
    return CliffordElement(x.algebra, {m: c for m, c in x.coeffs.items() if m.bit_count() % 2 == 1})


def trace(x: CliffordElement) -> int:
    """Trace of left multiplication by ``x`` on the whole algebra."""
    return sum(c * x.algebra.mono_trace(m) for m, c in x.coeffs.items())


def canonical_a(alg: CliffordAlgebra, search_bound: int = 3) -> CliffordElement:
    """``v * w`` for the first orthogonal pair of anisotropic vectors found.

    Candidates are the basis vectors, then every vector with coordinates in
    ``[-search_bound, search_bound]`` by increasing l1-norm. Since
    ``b(v, w) = 0`` gives ``w v = -v w``, the product is even and reversal
    negates it.
    """
    lat = alg.lattice
    n = lat.rank
    basis = [tuple(r) for r in intmat.identity(n)]
    box = [
        v for v in product(range(-search_bound, search_bound + 1), repeat=n)
        if any(v) and intmat.content(v) == 1 and _first_nonzero(v) > 0 and v not in basis
    ]
    box.sort(key=lambda v: (sum(map(abs, v)), tuple(-c for c in v)))
    cands = [v for v in basis + box if lat.q(v) != 0]
    for i, v in enumerate(cands):
        for w in cands[i + 1:]:
            if lat.b(v, w) == 0:
                a = alg.vector(v) * alg.vector(w)
                assert reversal(a) == -a and odd_part(a).is_zero
                return a
    raise NoOrthogonalPair(f"no orthogonal anisotropic pair with coordinates in [-{search_bound}, {search_bound}]")


def _first_nonzero(v) -> int:
    return next(c for c in v if c)


@dataclass(frozen=True)
class PolarizationForm:
    dim: int
    matrix: tuple[tuple[int, ...], ...]
    a_used: CliffordElement

    def entry(self, s: int, t: int) -> int:
        return self.matrix[s][t]

    def is_antisymmetric(self) -> bool:
        m = self.matrix
        return all(m[i][j] == -m[j][i] for i in range(self.dim) for j in range(self.dim))


def _check_twist(a: CliffordElement) -> None:
    if not odd_part(a).is_zero:
        raise BadTwistElement("a has a nonzero odd part")
    if reversal(a) != -a:
        raise BadTwistElement("reversal(a) != -a")


def polarization_form(alg: CliffordAlgebra, a: CliffordElement) -> PolarizationForm:
    """Matrix ``[Tr(rev(e_S) e_T a)]`` on the monomial basis."""
    if a.algebra != alg:
        raise AlgebraMismatch("twist element from another algebra")
    _check_twist(a)
    n = alg.dim
    # Phi = R^T B P with R[:, S] = rev(e_S), P[:, T] = e_T a, B[u][v] = Tr(e_u e_v)
    rev = np.zeros((n, n), dtype=object)
    right = np.zeros((n, n), dtype=object)
    for s in range(n):
        for m, c in alg.mono_reversal(s).items():
            rev[m, s] = c
        for m, c in multiply(alg.element({s: 1}), a).coeffs.items():
            right[m, s] = c
    pairing = np.array(alg.trace_pairing, dtype=object)
    phi = rev.T.dot(pairing).dot(right)
    mat = tuple(tuple(int(x) for x in row) for row in phi)
    form = PolarizationForm(n, mat, a)
    if not form.is_antisymmetric():
        raise AssertionError("trace form of a reversal-odd element is not antisymmetric")
    return form


@dataclass(frozen=True)
class PolarizationDegree:
    elementary_divisors: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    degree: int

    def to_json(self) -> dict:
        return {
            "elementary_divisors": list(self.elementary_divisors),
            "pairs": [list(p) for p in self.pairs],
            "degree": self.degree,
        }


def polarization_degree(form: PolarizationForm) -> PolarizationDegree:
    """Smith form of the alternating matrix; degree is the product over one
    member of each equal pair (the absolute Pfaffian)."""
    divs = intmat.smith_diagonal([list(r) for r in form.matrix])
    if len(divs) < form.dim:
        raise DegenerateForm(f"form has rank {len(divs)} < {form.dim}")
    pairs = tuple((divs[i], divs[i + 1]) for i in range(0, len(divs), 2))
    if any(p != q for p, q in pairs):
        raise AssertionError(f"elementary divisors of an alternating form are unpaired: {divs}")
    degree = 1
    for p, _ in pairs:
        degree *= p
    return PolarizationDegree(tuple(divs), pairs, degree)


@dataclass(frozen=True)
class KSDimensions:
    b2: int
    rank_lambda_h: int
    transcendental_signature: tuple[int, int]
    clifford_rank: int
    abelian_dim: int

    def to_json(self) -> dict:
        return {
            "b2": self.b2,
            "rank_lambda_h": self.rank_lambda_h,
            "transcendental_signature": list(self.transcendental_signature),
            "clifford_rank": self.clifford_rank,
            "abelian_dim": self.abelian_dim,
        }


def ks_dimensions(b2: int) -> KSDimensions:
    """Dimension bookkeeping for the Kuga-Satake abelian variety of ``h^perp``."""
    if b2 < 4:
        raise B2TooSmall(f"b2 = {b2} < 4")
    m = b2 - 3
    rank = b2 - 1
    clifford_rank = 2**rank
    abelian_dim = clifford_rank // 2
    assert 2 ** (m + 1) == abelian_dim == 2 ** (b2 - 2)
    return KSDimensions(b2, rank, (2, m), clifford_rank, abelian_dim)
