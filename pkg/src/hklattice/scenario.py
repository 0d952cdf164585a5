"""Scenario files: a rank-2 Neron-Severi lattice with an ample seed, wall
types, an isometry and a list of named checks, each backed by one library
operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .cones import WallSpec, chamber_of, chamber_orbit
from .enumeration import certify_nonexistence, rank2_solutions, verify_certificate
from .errors import LatticeError, ValidationError
from .io import lattice_from_doc, validate
from .isometry import classify_order, make_isometry, verify_classification
from .lattice import IntegralLattice


@dataclass(frozen=True)
class Scenario:
    name: str
    lattice: IntegralLattice
    ample_seed: tuple[int, ...]
    wall_specs: tuple[WallSpec, ...]
    box_bound: int
    checks: tuple[str, ...]
    isometry: tuple[tuple[int, ...], ...] | None = None
    orbit_length: int | None = None
    max_modulus: int = 64
    expected: dict = field(default_factory=dict, compare=False)
    raw: dict = field(default_factory=dict, compare=False, repr=False)


def scenario_from_doc(doc) -> Scenario:
    validate(doc, "scenario")
    lat = lattice_from_doc(doc["lattice"])
    unknown = [c for c in doc["checks"] if c not in CHECKS]
    if unknown:
        raise ValidationError(f"unknown checks: {', '.join(unknown)}")
    if len(doc["ample_seed"]) != lat.rank:
        raise ValidationError("ample_seed length does not match lattice rank")
    iso = doc.get("isometry")
    return Scenario(
        name=doc.get("name", "scenario"),
        lattice=lat,
        ample_seed=tuple(doc["ample_seed"]),
        wall_specs=tuple(WallSpec(w["norm"], w["div"]) for w in doc["wall_specs"]),
        box_bound=doc["box_bound"],
        checks=tuple(doc["checks"]),
        isometry=tuple(tuple(r) for r in iso["matrix"]) if iso else None,
        orbit_length=doc.get("orbit_length"),
        max_modulus=doc.get("max_modulus", 64),
        expected=doc.get("expected", {}),
        raw=doc,
    )


def _nonexistence(sc: Scenario, m: int) -> tuple[bool, dict]:
    cert = certify_nonexistence(sc.lattice, m, sc.max_modulus)
    rechecked = verify_certificate(cert)
    box = 10 * cert.modulus
    box_hits = rank2_solutions(sc.lattice, m, box, primitive_only=(m == 0))
    return rechecked and not box_hits, {
        "certificate": cert.to_json(),
        "certificate_rechecked": rechecked,
        "box_bound": box,
        "box_solutions": [list(v.coords) for v in box_hits],
    }


def check_no_isotropic(sc: Scenario, _ctx: dict):
    return _nonexistence(sc, 0)


def check_no_minus_two(sc: Scenario, _ctx: dict):
    return _nonexistence(sc, -2)


def _nef(sc: Scenario, ctx: dict):
    if "nef" not in ctx:
        ctx["nef"] = chamber_of(sc.lattice, sc.ample_seed, sc.wall_specs, sc.box_bound)
    return ctx["nef"]


def check_nef_rays(sc: Scenario, ctx: dict):
    res = _nef(sc, ctx)
    got = {res.chamber.ray1, res.chamber.ray2}
    out = res.to_json()
    want = sc.expected.get("nef_rays")
    if want is None:
        return True, out
    out["expected"] = want
    return got == {tuple(r) for r in want}, out


def _isometry(sc: Scenario):
    if sc.isometry is None:
        raise ValidationError("scenario has no isometry")
    return make_isometry(sc.lattice, sc.isometry)


def check_infinite_order(sc: Scenario, _ctx: dict):
    g = _isometry(sc)
    c = classify_order(g)
    out = c.to_json()
    out["verified"] = verify_classification(g, c)
    ok = not c.finite and out["verified"]
    want = sc.expected.get("witness_polynomial")
    if want is not None:
        out["expected_witness"] = want
        ok = ok and list(c.witness_polynomial or ()) == want
    return ok, out


def check_orbit_disjoint(sc: Scenario, ctx: dict):
    g = _isometry(sc)
    nef = _nef(sc, ctx).chamber
    rep = chamber_orbit(g, nef, sc.orbit_length or 1)
    out = rep.to_json()
    ok = rep.pairwise_disjoint
    want = sc.expected.get("orbit_ray_norm")
    if want is not None:
        ok = ok and set(rep.ray_norms) == {want}
    return ok, out


CHECKS: dict[str, Callable] = {
    "no_isotropic": check_no_isotropic,
    "no_minus_two": check_no_minus_two,
    "nef_rays": check_nef_rays,
    "infinite_order": check_infinite_order,
    "orbit_disjoint": check_orbit_disjoint,
}


def run_scenario(sc: Scenario) -> dict:
    ctx: dict = {}
    results = []
    for name in sc.checks:
        try:
            ok, out = CHECKS[name](sc, ctx)
            results.append({"name": name, "passed": bool(ok), "result": out, "error": None})
        except LatticeError as e:
            results.append(
                {"name": name, "passed": False, "result": None, "error": f"{type(e).__name__}: {e}"}
            )
    inputs = {k: v for k, v in sc.raw.items() if k != "notes"}
    return {
        "scenario": sc.name,
        "inputs": inputs,
        "checks": results,
        "all_passed": all(r["passed"] for r in results),
        "error": None,
    }

