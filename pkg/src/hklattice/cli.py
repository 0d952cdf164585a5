"""Command-line front end.

Exit codes: 0 success (all checks pass), 1 check failure or domain error,
2 input or parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .clifford import (
    canonical_a,
    clifford,
    element_from_json,
    ks_dimensions,
    polarization_degree,
    polarization_form,
)
from .cones import chamber_of
from .embeddings import primitive_embeddings
from .enumeration import NormQuery, certify_nonexistence, rank2_solutions, vectors_of_norm
from .errors import InputError, LatticeError, NotFound
from .isometry import classify_order, make_isometry, orbits, orthogonal_group, verify_classification
from .scenario import run_scenario, scenario_from_doc


def _table(rows: list[tuple[str, object]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def cmd_lattice_info(args) -> tuple[dict, int]:
    lat = io.load_lattice(args.lattice)
    sig = lat.signature
    det = lat.determinant
    report = {
        "label": lat.label,
        "rank": lat.rank,
        "signature": list(sig.as_tuple()),
        "determinant": det,
        "even": lat.is_even,
        "unimodular": abs(det) == 1,
        "discriminant_group_order": abs(det) if det else None,
    }
    return report, 0


def cmd_run_scenario(args) -> tuple[dict, int]:
    sc = scenario_from_doc(io.load_json(args.scenario))
    report = run_scenario(sc)
    io.validate(report, "report")
    return report, 0 if report["all_passed"] else 1


def cmd_ks(args) -> tuple[dict, int]:
    report: dict = {}
    if args.b2 is not None:
        report["dimensions"] = ks_dimensions(args.b2).to_json()
    if args.lattice is not None:
        lat = io.load_lattice(args.lattice)
        alg = clifford(lat, args.rank_limit or 10)
        if args.a is not None:
            a = element_from_json(alg, io.load_json(args.a))
        else:
            a = canonical_a(alg)
        form = polarization_form(alg, a)
        report["clifford_rank"] = alg.dim
        report["a"] = a.to_json()
        report["polarization"] = polarization_degree(form).to_json()
        if args.show_matrix:
            report["matrix"] = [list(r) for r in form.matrix]
    if not report:
        raise InputError("ks needs --b2 and/or a lattice file")
    return report, 0


def cmd_embed(args) -> tuple[dict, int]:
    src = io.load_lattice(args.source)
    tgt = io.load_lattice(args.target)
    res = primitive_embeddings(src, tgt, args.rank_limit or 8)
    return res.to_json(), 0


def cmd_orbits(args) -> tuple[dict, int]:
    lat = io.load_lattice(args.lattice)
    vecs = vectors_of_norm(NormQuery(lat, args.norm, primitive_only=args.primitive))
    group = orthogonal_group(lat, args.rank_limit or 8)
    orbs = orbits(vecs, group)
    return {
        "norm": args.norm,
        "vector_count": len(vecs),
        "group_order": len(group),
        "orbit_count": len(orbs),
        "orbits": [o.to_json() for o in orbs],
    }, 0


def cmd_vectors(args) -> tuple[dict, int]:
    lat = io.load_lattice(args.lattice)
    if lat.is_definite:
        q = NormQuery(lat, args.norm, args.primitive, args.box_bound)
        vecs = vectors_of_norm(q)
        return {"query": q.to_json(), "vectors": [list(v.coords) for v in vecs]}, 0
    if args.box_bound is None:
        raise InputError("--box-bound is required for an indefinite lattice")
    q = NormQuery(lat, args.norm, args.primitive, args.box_bound)
    primitive = args.primitive or args.norm == 0
    vecs = rank2_solutions(lat, args.norm, args.box_bound, primitive_only=primitive)
    report = {"query": q.to_json(), "vectors": [list(v.coords) for v in vecs]}
    if not vecs:
        try:
            report["certificate"] = certify_nonexistence(lat, args.norm).to_json()
        except NotFound:
            report["certificate"] = None
    return report, 0


def cmd_chamber(args) -> tuple[dict, int]:
    sc = scenario_from_doc(io.load_json(args.scenario))
    box = args.box_bound or sc.box_bound
    res = chamber_of(sc.lattice, sc.ample_seed, sc.wall_specs, box)
    return res.to_json(), 0


def cmd_isometry_order(args) -> tuple[dict, int]:
    lat = io.load_lattice(args.lattice)
    doc = io.load_json(args.isometry)
    io.validate(doc, "isometry")
    g = make_isometry(lat, doc["matrix"])
    c = classify_order(g)
    out = c.to_json()
    out["verified"] = verify_classification(g, c)
    return out, 0


def _render(report: dict) -> str:
    if "checks" in report:
        lines = [f"scenario {report.get('scenario')}"]
        for c in report["checks"]:
            status = "PASS" if c["passed"] else "FAIL"
            extra = f"  ({c['error']})" if c.get("error") else ""
            lines.append(f"  {status}  {c['name']}{extra}")
        lines.append("all checks passed" if report["all_passed"] else "some checks failed")
        return "\n".join(lines)
    rows = [(k, v) for k, v in report.items() if not isinstance(v, (dict, list)) or len(str(v)) < 100]
    hidden = [k for k in report if k not in dict(rows)]
    text = _table(rows) if rows else ""
    if hidden:
        text += f"\n(use --json for: {', '.join(hidden)})"
    return text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hklattice", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--box-bound", type=int, default=None)
    p.add_argument("--rank-limit", type=int, default=None)
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--box-bound", type=int, default=argparse.SUPPRESS)
    common.add_argument("--rank-limit", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice-info", parents=[common], help="rank, signature, determinant, parity")
    s.add_argument("lattice")
    s.set_defaults(func=cmd_lattice_info)

    s = sub.add_parser("run-scenario", parents=[common], help="run a scenario file's checks")
    s.add_argument("scenario", help="scenario JSON, or 'ht10' for the bundled one")
    s.set_defaults(func=cmd_run_scenario)

    s = sub.add_parser("ks", parents=[common], help="Kuga-Satake dimensions and trace polarization")
    s.add_argument("lattice", nargs="?")
    s.add_argument("--b2", type=int)
    s.add_argument("--a", help="twist element JSON {'terms': [...]}")
    s.add_argument("--show-matrix", action="store_true")
    s.set_defaults(func=cmd_ks)

    s = sub.add_parser("embed", parents=[common], help="primitive embeddings source -> definite target")
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("orbits", parents=[common], help="O(L)-orbits of vectors of a given norm")
    s.add_argument("lattice")
    s.add_argument("--norm", type=int, required=True)
    s.add_argument("--primitive", action="store_true")
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("vectors", parents=[common], help="vectors of a given norm")
    s.add_argument("lattice")
    s.add_argument("--norm", type=int, required=True)
    s.add_argument("--primitive", action="store_true")
    s.set_defaults(func=cmd_vectors)

    s = sub.add_parser("chamber", parents=[common], help="ample chamber of a scenario")
    s.add_argument("scenario")
    s.set_defaults(func=cmd_chamber)

    s = sub.add_parser("isometry-order", parents=[common], help="finite or infinite order of an isometry")
    s.add_argument("lattice")
    s.add_argument("isometry")
    s.set_defaults(func=cmd_isometry_order)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for attr in ("scenario",):
        if getattr(args, attr, None) == "ht10":
            setattr(args, attr, str(io.bundled_scenario_path("ht10")))
    try:
        report, code = args.func(args)
    except InputError as e:
        report, code = {"error": f"{type(e).__name__}: {e}", "checks": [], "all_passed": False}, 2
    except LatticeError as e:
        report, code = {"error": f"{type(e).__name__}: {e}", "checks": [], "all_passed": False}, 1
    if "error" in report and report["error"] and args.command != "run-scenario":
        report = {"error": report["error"]}
    if args.json:
        sys.stdout.write(io.dumps(report))
    else:
        if report.get("error") and not report.get("checks"):
            print(report["error"], file=sys.stderr)
        else:
            print(_render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
