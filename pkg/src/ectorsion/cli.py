"""Command-line entry point: ``ectorsion <subcommand> ...``.

Exit status is 0 on success, 1 when a verification or search fails, and 2 on
usage errors.  ``--json`` output uses sorted keys and reduced rationals.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .catalog import DegenerateParameter, NonSquareY, catalog_json, catalog_list, get_entry, specialize
from .curves import Curve, Point, PointNotOnCurve, SingularCurve
from .exact_math import format_rational, parse_rational
from .torsion import group_tag, torsion_structure


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _range(text: str) -> range:
    from .sieve import parse_range

    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _points(text: str) -> list[Point]:
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected 'x,y', got {chunk!r}")
        out.append(Point(_rational(parts[0]), _rational(parts[1])))
    if not out:
        raise argparse.ArgumentTypeError("no points given")
    return out


def _entry(entry_id: str):
    try:
        return get_entry(entry_id)
    except KeyError:
        raise UsageError(f"unknown family {entry_id!r}; see 'catalog list'") from None


def _curve(A: Fraction, B: Fraction) -> Curve:
    try:
        return Curve(A, B)
    except SingularCurve as exc:
        raise UsageError(f"singular curve: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.json:
        print(_dump(catalog_json()))
        return 0
    for e in catalog_list():
        parent = e.parent or "-"
        print(f"{e.id:<16} {group_tag(e.claimed_torsion):<8} {e.param}  points={len(e.claimed_points)}  parent={parent}")
    return 0


def cmd_verify(args) -> int:
    from .verify import verify_all

    if not args.all and not args.family:
        raise UsageError("verify needs --all or --family")
    ids = None if args.all else [_entry(f).id for f in args.family]
    reports = verify_all(ids, samples=args.samples, seed=args.seed, workers=args.threads)
    ok = all(r.ok for r in reports)
    if args.json:
        print(_dump({"ok": ok, "reports": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            failed = [c for c in r.claims if not c.passed]
            status = "ok  " if r.ok else "FAIL"
            print(f"{status} {r.entry_id:<18} {len(r.claims):>3} claims  {r.elapsed:6.2f}s")
            for c in failed:
                print(f"     failed: {c.name}: {c.detail}")
        print("all claims hold" if ok else "some claims failed")
    return 0 if ok else 1


def cmd_specialize(args) -> int:
    entry = _entry(args.family)
    try:
        s = specialize(entry, args.param)
    except (DegenerateParameter, NonSquareY) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    data = {
        "family": entry.id, "param": format_rational(s.param), "curve": s.curve.to_json(),
        "points": {label: P.to_json() for label, P in s.points},
        "torsion_point": s.torsion_point.to_json() if s.torsion_point else None,
    }
    if args.json:
        print(_dump(data))
    else:
        print(f"{entry.id} at {entry.param} = {data['param']}: {s.curve!r}")
        for label, P in s.points:
            print(f"  {label}: {P!r}")
        if s.torsion_point:
            print(f"  torsion generator: {s.torsion_point!r}")
    return 0


def cmd_torsion(args) -> int:
    E = _curve(args.A, args.B)
    res = torsion_structure(E)
    data = {"curve": E.to_json(), "group": res.tag, "order": res.order,
            "generators": [P.to_json() for P in res.generators], "bound": res.bound,
            "primes_used": list(res.primes_used)}
    if args.json:
        print(_dump(data))
    else:
        print(f"{E!r}: torsion {res.tag} (order {res.order}, bound {res.bound})")
        for P in res.generators:
            print(f"  generator {P!r} of order {E.point_order(P)}")
    return 0


def cmd_height(args) -> int:
    from .heights import canonical_height, gram_matrix, regulator_value

    E = _curve(args.A, args.B)
    try:
        for P in args.points:
            E.check(P)
    except PointNotOnCurve as exc:
        raise UsageError(str(exc)) from None
    hs = [canonical_height(E, P, args.eps) for P in args.points]
    G, err = gram_matrix(E, args.points, args.eps)
    reg = regulator_value(E, args.points, args.eps)
    data = {"curve": E.to_json(), "points": [P.to_json() for P in args.points],
            "heights": [h.value for h in hs], "height_errors": [h.error_bound for h in hs],
            "gram": G, "gram_error": err, "regulator": reg.value, "regulator_error": reg.error_bound}
    if args.json:
        print(_dump(data))
    else:
        for P, h in zip(args.points, hs):
            print(f"h({P!r}) = {h.value:.12f}  (+- {h.error_bound:.1e})")
        print("Gram matrix:")
        for row in G:
            print("  " + "  ".join(f"{v:16.10f}" for v in row))
        print(f"regulator = {reg.value:.12g}  (+- {reg.error_bound:.1e})")
    return 0


def cmd_sieve(args) -> int:
    from .sieve import SUM_VARIANT, plot_scan, scan, write_csv

    entry = _entry(args.family)
    evaluated: list = []
    top = scan(entry, args.num, args.den, args.primes, args.top, workers=args.threads, evaluated=evaluated)
    out = Path(args.out)
    write_csv(top, out)
    png = out.with_suffix(".png")
    plot_scan(evaluated, top, png, f"{entry.id}: {SUM_VARIANT}, N = {args.primes}")
    if args.json:
        print(_dump({"family": entry.id, "variant": SUM_VARIANT, "N": args.primes, "evaluated": len(evaluated),
                     "records": [r.to_json() for r in top], "csv": str(out), "plot": str(png)}))
    else:
        print(f"{entry.id}: {len(evaluated)} non-degenerate parameters, variant {SUM_VARIANT}, N = {args.primes}")
        for r in top:
            print(f"  {format_rational(r.parameter):>12}  {r.score:10.4f}  torsion_ok={r.torsion_ok}")
        print(f"wrote {out} and {png}")
    return 0


def cmd_rank3(args) -> int:
    from .rank3 import ExhaustedSearch, IndependenceFailure, build_rank3, get_spec

    spec = get_spec(args.torsion)
    filtered: list = []
    try:
        curves = build_rank3(spec, args.count, search_bound=args.search_bound, filtered=filtered)
    except (ExhaustedSearch, IndependenceFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(_dump({"torsion": args.torsion, "curves": [c.to_json() for c in curves],
                     "filtered": [f.to_json() for f in filtered]}))
    else:
        for c in curves:
            cand = c.candidate
            print(f"r = {format_rational(cand.r)}, s = {', '.join(map(format_rational, cand.s))}, "
                  f"w = {format_rational(cand.w)}  from {cand.source}")
            print(f"  {cand.curve!r}  torsion {c.torsion}  regulator {c.regulator:.6g}")
            for P in cand.points:
                print(f"  {P!r}")
        for f in filtered:
            print(f"filtered r = {format_rational(f.r)}: {f.status}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes (default: available cores)")

    p = argparse.ArgumentParser(prog="ectorsion", description="Torsion families of elliptic curves: "
                                "verification, heights, rank-3 construction and sieving.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", parents=[common], help="list the family catalog")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify", parents=[common], help="check the catalog's claims")
    v.add_argument("--all", action="store_true", help="every entry plus the global identities")
    v.add_argument("--family", action="append", help="one entry id (repeatable)")
    v.add_argument("--samples", type=int, default=20, help="random specializations per entry")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("specialize", parents=[common], help="evaluate a family at a parameter")
    s.add_argument("--family", required=True)
    s.add_argument("--param", required=True, type=_rational)
    s.set_defaults(func=cmd_specialize)

    t = sub.add_parser("torsion", parents=[common], help="torsion subgroup of y^2 = x^3 + A x^2 + B x")
    t.add_argument("--A", required=True, type=_rational)
    t.add_argument("--B", required=True, type=_rational)
    t.set_defaults(func=cmd_torsion)

    h = sub.add_parser("height", parents=[common], help="canonical heights and regulator")
    h.add_argument("--A", required=True, type=_rational)
    h.add_argument("--B", required=True, type=_rational)
    h.add_argument("--points", required=True, type=_points, help='"x1,y1;x2,y2;..."')
    h.add_argument("--eps", type=float, default=1e-10, help="absolute error target per height")
    h.set_defaults(func=cmd_height)

    sv = sub.add_parser("sieve", parents=[common], help="Mestre-Nagao scan over a parameter grid")
    sv.add_argument("--family", required=True)
    sv.add_argument("--num", required=True, type=_range, help="numerators a..b")
    sv.add_argument("--den", required=True, type=_range, help="denominators c..d")
    sv.add_argument("--primes", type=int, default=1000, help="sum over primes up to N")
    sv.add_argument("--top", type=int, default=10)
    sv.add_argument("--out", required=True, help="CSV path; the plot goes next to it as .png")
    sv.set_defaults(func=cmd_sieve)

    r = sub.add_parser("rank3", parents=[common], help="curves with three independent points")
    r.add_argument("--torsion", required=True, choices=["z8", "z2x6"])
    r.add_argument("--count", type=int, default=3)
    r.add_argument("--search-bound", type=int, default=200, help="|x| bound for points on the auxiliary cubic")
    r.set_defaults(func=cmd_rank3)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    for name in ("count", "top", "samples"):
        if getattr(args, name, 1) < 1:
            parser.error(f"--{name} must be at least 1")
    if getattr(args, "primes", 3) < 3:
        parser.error("--primes must be at least 3")
    if getattr(args, "eps", 1.0) <= 0:
        parser.error("--eps must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
