"""Wall-and-chamber geometry in rank-2 hyperbolic lattices.

A rank-2 lattice of signature (1, 1) has a positive cone with two components,
each an open angular sector narrower than a half-plane. Fixing one component
(via a positive seed class) every ray in it is ordered counterclockwise by the
sign of the 2x2 determinant ``det(u, v) = u0*v1 - u1*v0``; all comparisons
below reduce to that sign and to exact pairings.

A wall class ``D`` (negative norm, primitive) has a positive orthogonal line
``D^perp`` which meets the chosen component in exactly one ray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from . import intmat
from .enumeration import rank2_solutions
from .errors import (
    ComponentSwapped,
    IrrationalBoundary,
    LatticeMismatch,
    NotHyperbolic,
    SeedNotPositive,
    SeedOnWall,
    ValidationError,
    WrongRank,
)
from .isometry import Isometry
from .lattice import IntegralLattice, divisibility

Vec = tuple[int, int]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _primitive(v: Sequence[int]) -> Vec:
    g = math.gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


@dataclass(frozen=True)
class WallSpec:
    norm: int
    div: int

    def __post_init__(self):
        if self.norm >= 0:
            raise ValidationError(f"wall norm must be negative, got {self.norm}")
        if self.div < 1:
            raise ValidationError(f"divisibility must be positive, got {self.div}")

    def to_json(self) -> dict:
        return {"norm": self.norm, "div": self.div}


@dataclass(frozen=True)
class PositiveCone:
    """One component of the positive cone, fixed by ``seed``."""

    lattice: IntegralLattice
    seed: Vec

    def contains(self, v: Sequence[int]) -> bool:
        """Closed-cone membership (nonzero ``v``)."""
        return self.lattice.q(v) >= 0 and self.lattice.b(v, self.seed) > 0

    def normalize(self, v: Sequence[int]) -> Vec:
        """Primitive representative of the line through ``v`` that lies in this component."""
        p = _primitive(v)
        return p if self.lattice.b(p, self.seed) > 0 else (-p[0], -p[1])

    def isotropic_rays(self) -> tuple[Vec, Vec] | None:
        """The two boundary rays ``(clockwise, counterclockwise)`` if rational."""
        (a, b), (_, c) = self.lattice.gram
        disc = b * b - a * c
        s = math.isqrt(disc)
        if s * s != disc:
            return None
        if c != 0:
            cands = [(c, -b + s), (c, -b - s)]
        elif a != 0:
            cands = [(0, 1), (2 * b, -a)]
        else:
            cands = [(1, 0), (0, 1)]
        r1, r2 = (self.normalize(v) for v in cands)
        return (r1, r2) if det2(r1, r2) > 0 else (r2, r1)


def positive_cone_component(lat: IntegralLattice, seed: Sequence[int]) -> PositiveCone:
    if lat.rank != 2:
        raise WrongRank(f"rank {lat.rank} lattice; rank 2 required")
    if lat.signature.as_tuple() != (1, 1, 0):
        raise NotHyperbolic(f"signature {lat.signature.as_tuple()} is not (1, 1)")
    if lat.q(seed) <= 0:
        raise SeedNotPositive(f"seed {tuple(seed)} has norm {lat.q(seed)}")
    return PositiveCone(lat, (seed[0], seed[1]))


@dataclass(frozen=True)
class Wall:
    """A wall class and the ray of its orthogonal line inside the component.

    The sign of ``class_vector`` is fixed so that it pairs positively with the
    counterclockwise side of ``ray``.
    """

    class_vector: Vec
    ray: Vec
    norm: int
    div: int

    @property
    def height(self) -> int:
        return max(abs(self.class_vector[0]), abs(self.class_vector[1]))

    def to_json(self) -> dict:
        return {
            "class": list(self.class_vector),
            "ray": list(self.ray),
            "norm": self.norm,
            "div": self.div,
        }


def wall_from_class(cone: PositiveCone, d: Sequence[int]) -> Wall:
    lat = cone.lattice
    w = intmat.matvec(lat.matrix(), d)
    ray = cone.normalize((w[1], -w[0]))
    turn = (-ray[1], ray[0])  # ccw of ray
    dv = (d[0], d[1]) if lat.b(d, turn) > 0 else (-d[0], -d[1])
    return Wall(dv, ray, lat.q(d), divisibility(lat.vector(d)))


@dataclass(frozen=True)
class Chamber:
    """Closed cone between ``ray1`` and ``ray2``, with ``det(ray1, ray2) > 0``."""

    lattice: IntegralLattice
    ray1: Vec
    ray2: Vec

    def __post_init__(self):
        if det2(self.ray1, self.ray2) <= 0:
            raise ValidationError(f"rays {self.ray1}, {self.ray2} are not in counterclockwise order")

    def contains_strictly(self, v: Sequence[int]) -> bool:
        return det2(self.ray1, v) > 0 and det2(v, self.ray2) > 0

    def interior_point(self) -> Vec:
        return (self.ray1[0] + self.ray2[0], self.ray1[1] + self.ray2[1])

    def to_json(self) -> dict:
        return {"rays": [list(self.ray1), list(self.ray2)]}


def make_chamber(lat: IntegralLattice, r1: Sequence[int], r2: Sequence[int]) -> Chamber:
    """Chamber spanned by two rays given in either order."""
    a, b = _primitive(r1), _primitive(r2)
    if det2(a, b) < 0:
        a, b = b, a
    return Chamber(lat, a, b)


def _ccw_cmp(u: Vec, v: Vec) -> int:
    d = det2(u, v)
    return -1 if d > 0 else (1 if d < 0 else 0)


def walls_near(
    lat: IntegralLattice,
    specs: Iterable[WallSpec],
    region: Chamber | PositiveCone,
    box_bound: int,
) -> list[Wall]:
    """Walls matching ``specs`` with ``|coords| <= box_bound`` crossing the open ``region``.

    ``region`` is either a chamber-like pair of rays or a whole component.
    Output is sorted counterclockwise by wall ray.
    """
    if lat.rank != 2:
        raise WrongRank(f"rank {lat.rank} lattice; rank 2 required")
    specs = list(specs)
    if isinstance(region, PositiveCone):
        cone = region
        inside = lambda ray: True  # noqa: E731
    else:
        cone = PositiveCone(lat, region.interior_point())
        inside = region.contains_strictly
    if region.lattice != lat:
        raise LatticeMismatch("region lives in a different lattice")
    wanted = {(s.norm, s.div) for s in specs}
    found: dict[Vec, Wall] = {}
    for n in sorted({s.norm for s in specs}):
        for v in rank2_solutions(lat, n, box_bound, primitive_only=True):
            if (n, divisibility(v)) not in wanted:
                continue
            w = wall_from_class(cone, v.coords)
            if inside(w.ray):
                found[w.class_vector] = w
    return sorted(found.values(), key=lambda w: (cmp_to_key(_ccw_cmp)(w.ray), w.class_vector))


@dataclass(frozen=True)
class ChamberResult:
    chamber: Chamber
    walls: tuple[Wall | None, Wall | None]
    stable_since: int
    box_bound: int

    def to_json(self) -> dict:
        return {
            "rays": [list(self.chamber.ray1), list(self.chamber.ray2)],
            "bounding_walls": [w.to_json() if w else None for w in self.walls],
            "stable_since_box_bound": self.stable_since,
            "box_bound": self.box_bound,
        }


def chamber_of(
    lat: IntegralLattice,
    seed: Sequence[int],
    specs: Iterable[WallSpec],
    box_bound: int,
) -> ChamberResult:
    """The chamber of the wall arrangement containing ``seed``.

    Walls are searched only up to ``box_bound``; ``stable_since`` is the least
    bound at which the same answer is already obtained (larger searches can
    only shrink the chamber).
    """
    if lat.rank != 2:
        raise WrongRank(f"rank {lat.rank} lattice; rank 2 required")
    if lat.q(seed) <= 0:
        raise SeedNotPositive(f"seed {tuple(seed)} has norm {lat.q(seed)}")
    cone = positive_cone_component(lat, seed)
    s = cone.seed
    walls = walls_near(lat, specs, cone, box_bound)
    for w in walls:
        if det2(w.ray, s) == 0:
            raise SeedOnWall(f"seed {s} lies on the wall of {w.class_vector}")
    cw = [w for w in walls if det2(w.ray, s) > 0]
    ccw = [w for w in walls if det2(s, w.ray) > 0]
    # nearest wall on each side; ties (same ray) cannot occur for primitive classes
    lo = max(cw, key=cmp_to_key(lambda a, b: _ccw_cmp(a.ray, b.ray)), default=None)
    hi = min(ccw, key=cmp_to_key(lambda a, b: _ccw_cmp(a.ray, b.ray)), default=None)
    boundary = None
    if lo is None or hi is None:
        boundary = cone.isotropic_rays()
        if boundary is None:
            raise IrrationalBoundary(
                "no wall on one side and the isotropic boundary ray is irrational"
            )
    r1 = lo.ray if lo else boundary[0]
    r2 = hi.ray if hi else boundary[1]
    stable = max((w.height for w in (lo, hi) if w is not None), default=0)
    return ChamberResult(Chamber(lat, r1, r2), (lo, hi), stable, box_bound)


def _swaps_component(g: Isometry, c: Chamber) -> bool:
    p = c.interior_point()
    return c.lattice.b(g.apply_coords(p), p) < 0


def apply_isometry(g: Isometry, c: Chamber, correct_component: bool = True) -> Chamber:
    if g.lattice != c.lattice:
        raise LatticeMismatch("isometry and chamber live in different lattices")
    a, b = g.apply_coords(c.ray1), g.apply_coords(c.ray2)
    if _swaps_component(g, c):
        if not correct_component:
            raise ComponentSwapped("isometry exchanges the two components of the positive cone")
        a, b = (-a[0], -a[1]), (-b[0], -b[1])
    return make_chamber(c.lattice, a, b)


def chambers_disjoint(c1: Chamber, c2: Chamber) -> bool:
    """Whether the open sectors of two chambers in one component are disjoint."""
    if c1.lattice != c2.lattice:
        raise LatticeMismatch("chambers live in different lattices")
    if c1.lattice.b(c1.interior_point(), c2.interior_point()) <= 0:
        raise ValidationError("chambers lie in different components of the positive cone")
    return det2(c1.ray2, c2.ray1) >= 0 or det2(c2.ray2, c1.ray1) >= 0


@dataclass(frozen=True)
class OrbitReport:
    chambers: tuple[Chamber, ...]
    disjoint: tuple[tuple[bool, ...], ...]
    fixed_slope_polynomial: tuple[int, int, int]
    slope_intervals: tuple[tuple[Fraction, Fraction] | None, ...]
    widths_decreasing: bool
    ray_norms: tuple[int, ...] = field(default=())

    @property
    def pairwise_disjoint(self) -> bool:
        n = len(self.chambers)
        return all(self.disjoint[i][j] for i in range(n) for j in range(n) if i != j)

    def to_json(self) -> dict:
        return {
            "chambers": [c.to_json()["rays"] for c in self.chambers],
            "pairwise_disjoint": self.pairwise_disjoint,
            "disjoint_matrix": [list(r) for r in self.disjoint],
            "ray_norms": sorted(set(self.ray_norms)),
            "fixed_slope_polynomial": list(self.fixed_slope_polynomial),
            "slope_intervals": [
                None if iv is None else [str(iv[0]), str(iv[1])] for iv in self.slope_intervals
            ],
            "widths_decreasing": self.widths_decreasing,
        }


def _slope_interval(c: Chamber) -> tuple[Fraction, Fraction] | None:
    # slope y/x is only an order-preserving chart when the sector avoids the vertical line
    (x1, y1), (x2, y2) = c.ray1, c.ray2
    if x1 == 0 or x2 == 0 or (x1 > 0) != (x2 > 0):
        return None
    s1, s2 = Fraction(y1, x1), Fraction(y2, x2)
    return (min(s1, s2), max(s1, s2))


def chamber_orbit(g: Isometry, c: Chamber, n: int, correct_component: bool = True) -> OrbitReport:
    """``[c, g c, ..., g^n c]`` with pairwise disjointness and slope convergence data.

    The fixed slopes ``t = y/x`` of ``g = [[a, b], [c, d]]`` are the roots of
    ``b t^2 + (a - d) t - c``.
    """
    if n < 1:
        raise ValidationError("orbit length must be positive")
    chambers = [c]
    for _ in range(n):
        chambers.append(apply_isometry(g, chambers[-1], correct_component))
    k = len(chambers)
    disjoint = tuple(
        tuple(i != j and chambers_disjoint(chambers[i], chambers[j]) for j in range(k))
        for i in range(k)
    )
    (a, b), (cc, d) = g.matrix
    intervals = tuple(_slope_interval(ch) for ch in chambers)
    widths = [iv[1] - iv[0] for iv in intervals if iv is not None]
    decreasing = len(widths) == k and all(x > y for x, y in zip(widths, widths[1:]))
    norms = tuple(c.lattice.q(r) for ch in chambers for r in (ch.ray1, ch.ray2))
    return OrbitReport(tuple(chambers), disjoint, (b, a - d, -cc), intervals, decreasing, norms)


def check_wall_bound(walls: Iterable[Wall], n: int) -> bool:
    return all(w.norm >= -n for w in walls)
