"""Command line front end (``diskpot``).

Exit codes: 0 success, 1 domain error, 2 malformed input.  Errors are a
single ``ErrorName: message`` line on standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from .corpus import corpus_dir, verify_all
from .errors import DiskPotentialError, InputError, MalformedSpec
from .lifting import LiftSpec, chern_weights, lift_potential
from .novikov import AffineFunctional, Potential, render, substitute_parameters
from .parsing import parse_potential
from .polytope import Polytope, dual_newton_polytope, lattice_points
from .potentials import quadric_potential, toric_potential
from .reduction import SubtorusAction, classify_classes, quotient_potential, report_from_overrides

__all__ = ["main", "parse_potential"]


def _read_json(path: str) -> dict:
    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"{path}: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def _read_potential_or_polytope(path: str, allow_unbounded: bool):
    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedSpec(f"{path}: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
        if "facets" in data:
            return Polytope.from_json(data, allow_unbounded=allow_unbounded)
        return Potential.from_json(data)
    return parse_potential(text)


def _parse_params(text: str | None) -> dict[str, AffineFunctional]:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise MalformedSpec(f"bad parameter assignment {item!r}, expected name=value")
        try:
            out[name.strip()] = AffineFunctional(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            raise MalformedSpec(f"bad value in {item!r}") from None
    return out


def _emit(p: Potential, args) -> None:
    point = _parse_params(args.params)
    if point:
        p = substitute_parameters(p, point)
    print(json.dumps(p.to_json(), indent=2) if args.json else render(p))


def _cmd_potential(args) -> int:
    poly = Polytope.from_json(_read_json(args.polytope), allow_unbounded=args.allow_unbounded)
    _emit(toric_potential(poly, allow_unbounded=args.allow_unbounded), args)
    return 0


def _cmd_quadric(args) -> int:
    _emit(quadric_potential(args.n), args)
    return 0


def _cmd_stability(args) -> int:
    poly = Polytope.from_json(_read_json(args.polytope), allow_unbounded=args.allow_unbounded)
    act = SubtorusAction.from_json(_read_json(args.action))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = classify_classes(poly, act)
    if args.json:
        faces = [{"facets": sorted(poly.facets[i].label for i in fv.face.active_facets),
                  "dim": fv.face.dim, "verdict": fv.verdict, "free": fv.free,
                  "stabilizer": [list(v) for v in fv.stabilizer], "torsion": list(fv.torsion)}
                 for fv in report.faces]
        print(json.dumps({"classes": dict(report.verdicts), "faces": faces,
                          "level_meets_interior": report.level_meets_interior}, indent=2))
    else:
        print(report.render(poly))
    return 0


def _cmd_reduce(args) -> int:
    source = _read_potential_or_polytope(args.input, args.allow_unbounded)
    act = SubtorusAction.from_json(_read_json(args.action))
    if isinstance(source, Polytope):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report = classify_classes(source, act)
        for fv in report.non_free_faces():
            labels = sorted(source.facets[i].label for i in fv.face.active_facets)
            print(f"warning: action not free over face {labels}", file=sys.stderr)
        w = toric_potential(source, allow_unbounded=args.allow_unbounded)
    else:
        w, report = source, report_from_overrides(act)
    _emit(quotient_potential(w, act, report), args)
    return 0


def _cmd_lift(args) -> int:
    source = _read_potential_or_polytope(args.potential, False)
    if isinstance(source, Polytope):
        raise MalformedSpec("lift expects a potential, not a polytope")
    data = _read_json(args.spec)
    if "relation" in data and "weights" not in data:
        data = dict(data, weights=chern_weights(data["relation"], int(data.get("degree", 0))))
    _emit(lift_potential(source, LiftSpec.from_json(data)), args)
    return 0


def _cmd_dual(args) -> int:
    poly = Polytope.from_json(_read_json(args.polytope))
    dual = dual_newton_polytope(poly)
    verts = sorted(dual.vertices())
    points = lattice_points(dual)
    if args.json:
        print(json.dumps({"vertices": [[str(x) for x in v] for v in verts],
                          "lattice_points": [list(p) for p in points]}, indent=2))
    else:
        for v in verts:
            print("(" + ",".join(str(x) for x in v) + ")")
        print(f"lattice points: {len(points)}")
    return 0


def _cmd_verify(args) -> int:
    report = verify_all(args.corpus or corpus_dir(), workers=args.workers)
    print(report.render())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--params", help="evaluate areas at e.g. 'u1=0,u2=1/2'")
    common.add_argument("--allow-unbounded", action="store_true")

    ap = argparse.ArgumentParser(prog="diskpot", description="Exact disk potentials and their reductions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", parents=[common], help="toric potential of a polytope")
    p.add_argument("polytope")
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("quadric", parents=[common], help="GZ fiber potential of the quadric Q^n")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_quadric)

    p = sub.add_parser("stability", parents=[common], help="classify classes at a level")
    p.add_argument("polytope")
    p.add_argument("action")
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("reduce", parents=[common], help="quotient potential")
    p.add_argument("input", help="polytope JSON, potential JSON or potential text")
    p.add_argument("action")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("lift", parents=[common], help="lift along a C*-bundle")
    p.add_argument("potential")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("dual", parents=[common], help="dual Newton polytope and its lattice points")
    p.add_argument("polytope")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("verify", help="run the golden corpus")
    p.add_argument("--corpus", type=Path, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, UnicodeDecodeError) as exc:
        print(f"InputError: {exc}", file=sys.stderr)
        return 2
    except (DiskPotentialError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
