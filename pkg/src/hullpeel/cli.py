"""Command line interface: ``hullpeel peel|generate|bench|compare``.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 oracle mismatch,
4 invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as pio
from .baselines import METRICS, distance_peel, layer_peel
from .exceptions import (
    InstanceTooLargeError,
    InvariantViolation,
    ParseError,
    PeelError,
    TooFewPointsError,
)
from .generators import KINDS, generate
from .oracles import exact_k_peel, hull_area, naive_weighted_peel
from .peeler import peel_points

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_INVARIANT = 4

ORACLE_MAX_N = 64
METHODS = ("weighted", "distance", "layer", "exact")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sidecar(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".meta.json")


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_peel(args) -> int:
    points = pio.read_points(args.input)
    if args.check_oracle and len(points) > ORACLE_MAX_N:
        raise UsageError(f"--check-oracle needs n <= {ORACLE_MAX_N}, got {len(points)}")
    trace, canon = peel_points(points, args.objective, args.k, seed=args.seed,
                               check=args.check, engine=args.engine)
    by_id = {p.id: p for p in points}
    _write(args.trace, pio.dumps_trace(trace, seed=args.seed, points_by_id=by_id))
    if args.svg:
        from .svg import render_peel
        Path(args.svg).write_text(render_peel(
            canon, [e.peeled for e in trace.events],
            title=f"{args.objective} peel of {Path(args.input).name}"))
    if args.check_oracle:
        ref = naive_weighted_peel(canon, args.objective, args.k)
        mine = [e.key() for e in trace.events]
        theirs = [e.key() for e in ref.events]
        if mine != theirs:
            step = next((i for i, (a, b) in enumerate(zip(mine, theirs)) if a != b),
                        min(len(mine), len(theirs)))
            print(f"oracle mismatch at step {step + 1}", file=sys.stderr)
            return EXIT_MISMATCH
        print(f"oracle agrees on {len(mine)} steps", file=sys.stderr)
    return EXIT_OK


def cmd_generate(args) -> int:
    points, meta = generate(args.kind, args.n, args.outliers, args.seed)
    pio.write_points(args.out, points)
    _sidecar(args.out).write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import bench

    sizes = [int(float(s)) for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        raise UsageError("--sizes needs at least one size")
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise UsageError("--sizes must be ascending")
    report = bench(sizes, seed=args.seed, objective=args.objective,
                   repeats=args.repeats, engine=args.engine)
    _write(args.report, json.dumps(report, indent=1) + "\n")
    bad = [r["n"] for r in report["rows"] if not (r["activations_ok"] and r["restore_ok"])]
    if bad:
        print(f"counter check failed for n = {bad}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def _recall(ids, planted):
    if not planted:
        return None
    return len(set(ids) & set(planted)) / len(planted)


def cmd_compare(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise UsageError(f"unknown method(s) {unknown}; choose from {list(METHODS)}")
    points = pio.read_points(args.input)
    planted = []
    side = _sidecar(args.input)
    if side.exists():
        planted = json.loads(side.read_text()).get("planted", [])
    if args.k > len(points):
        raise UsageError(f"--k {args.k} exceeds the number of points {len(points)}")
    trace, canon = peel_points(points, "area", args.k, seed=args.seed)
    results = {}
    for m in methods:
        if m == "weighted":
            ids = trace.peeled_ids()
        elif m == "distance":
            ids = distance_peel(canon, args.metric, args.k).peeled_ids()
        elif m == "layer":
            ids = layer_peel(canon, args.k).peeled_ids()
        else:
            try:
                removed, _ = exact_k_peel(points, args.k)
            except InstanceTooLargeError as e:
                results[m] = {"skipped": str(e)}
                continue
            ids = [p.id for p in removed]
        gone = set(ids)
        rest = [p for p in points if p.id not in gone]
        results[m] = {
            "removed": ids,
            "remaining_area": float(hull_area(rest)),
            "remaining_area_exact": str(hull_area(rest)),
            "recall": _recall(ids, planted),
        }
    report = {"input": str(args.input), "k": args.k, "planted": planted,
              "methods": results}
    _write(args.report, json.dumps(report, indent=1) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hullpeel", description="Area-weighted convex hull peeling.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    a = sub.add_parser("peel", help="peel a point file and write a trace")
    a.add_argument("input")
    a.add_argument("--k", type=int, default=None, help="number of peels (default: all)")
    a.add_argument("--objective", choices=("area", "perimeter", "count"), default="area")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--trace", default="-", help="trace output path (default stdout)")
    a.add_argument("--svg", default=None)
    a.add_argument("--check-oracle", action="store_true",
                   help=f"compare with the naive oracle (n <= {ORACLE_MAX_N})")
    a.add_argument("--check", action="store_true", help="assert invariants while peeling")
    a.add_argument("--engine", choices=("auto", "python", "compiled"), default="auto")
    a.set_defaults(func=cmd_peel)

    g = sub.add_parser("generate", help="write a seeded instance")
    g.add_argument("kind", choices=sorted(KINDS))
    g.add_argument("out")
    g.add_argument("--n", type=int, default=1000)
    g.add_argument("--outliers", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="time full peels on disk instances")
    b.add_argument("--sizes", required=True, help="comma separated, ascending")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--objective", choices=("area", "perimeter", "count"), default="area")
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--engine", choices=("auto", "python", "compiled"), default="auto")
    b.add_argument("--report", default="-", help="report path (default stdout)")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("compare", help="compare peeling methods on one instance")
    c.add_argument("input")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--methods", default="weighted,distance,layer")
    c.add_argument("--metric", choices=METRICS, default="euclidean")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--report", default="-", help="report path (default stdout)")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "k", None) is not None and args.k < 0:
            raise UsageError("--k must be nonnegative")
        return args.func(args)
    except UsageError as e:
        print(f"hullpeel: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"hullpeel: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"hullpeel: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation as e:
        print(f"hullpeel: invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (TooFewPointsError, ValueError, PeelError) as e:
        print(f"hullpeel: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
