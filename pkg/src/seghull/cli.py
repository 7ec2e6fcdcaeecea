"""Command-line front end: gen, hull, verify, bench.

Exit codes are uniform across commands: 0 success, 1 data or verification
failure, 2 usage error.
"""

import argparse
import sys
import time
from pathlib import Path

from . import parallel
from .datagen import KINDS, KINDS_2D, Distribution, generate
from .errors import ContractViolation, DegenerateInputError, EmptyInputError
from .geometry import Tolerance
from .oracle import contains_hull_point, hull2_giftwrap, hull3_bruteforce
from .pointfile import (
    PointFileError,
    read_points,
    write_points,
    write_points_binary,
    write_points_csv,
)
from .quickhull import order_hull_2d, quickhull_2d, quickhull_3d
from .report import BenchRecord, render_bench_figure, write_bench_csv

_ORACLE_3D_CAP = 128


class UsageError(Exception):
    pass


def _kind_dim(kind: str) -> int:
    return 2 if kind in KINDS_2D else 3


def _run_hull(points, eps_rel: float):
    tol = Tolerance(eps_rel)
    if points.dim == 2:
        return quickhull_2d(points, tol)
    return quickhull_3d(points, tol)


def cmd_gen(args) -> int:
    if args.dim != _kind_dim(args.dist):
        raise UsageError(f"{args.dist} is {_kind_dim(args.dist)}D, got --dim {args.dim}")
    try:
        dist = Distribution(args.dist, args.n, args.seed, args.band)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    points = generate(dist)
    try:
        write_points(args.out, points)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_hull(args) -> int:
    if args.threads is not None:
        parallel.set_workers(args.threads)
    points = read_points(args.input)
    t0 = time.perf_counter()
    result = _run_hull(points, args.eps_rel)
    ms = (time.perf_counter() - t0) * 1000.0
    vertices = result.vertices
    if vertices.dim == 2:
        vertices = order_hull_2d(vertices)
    for note in result.warnings:
        print(f"warning: {note}", file=sys.stderr)
    if args.out:
        is_binary = Path(args.input).read_bytes()[:4] == b"PTS1"
        writer = write_points_binary if is_binary else write_points_csv
        writer(args.out, vertices)
    else:
        for row in vertices.as_rows():
            print(",".join(repr(float(v)) for v in row))
    if args.stats:
        print(f"n={points.n} hull={vertices.n} iterations={result.iterations} "
              f"ms={ms:.3f}")
    return 0


def cmd_verify(args) -> int:
    points = read_points(args.input)
    tol = Tolerance(args.eps_rel)
    if points.dim == 3 and points.n > _ORACLE_3D_CAP:
        raise UsageError(
            f"3D verification is capped at n={_ORACLE_3D_CAP} (oracle is O(n^4))")
    result = _run_hull(points, args.eps_rel)
    got = set(result.vertices.as_tuples())
    if points.dim == 2:
        want = set(hull2_giftwrap(points, tol).as_tuples())
        if got == want:
            print(f"ok: {len(got)} hull vertices match the oracle")
            return 0
        missing, extra = want - got, got - want
        print(f"MISMATCH: {len(missing)} oracle vertices missing, "
              f"{len(extra)} unexpected", file=sys.stderr)
        for label, group in (("missing", missing), ("extra", extra)):
            for p in sorted(group)[:5]:
                print(f"  {label}: {p}", file=sys.stderr)
        return 1

    want = set(hull3_bruteforce(points, tol).as_tuples())
    missing = want - got
    if missing:
        print(f"MISMATCH: {len(missing)} oracle vertices missing", file=sys.stderr)
        for p in sorted(missing)[:5]:
            print(f"  missing: {p}", file=sys.stderr)
        return 1
    extras = got - want
    eps = tol.effective(points)
    stray = [p for p in extras if not contains_hull_point(points, p, eps)]
    print(f"ok: oracle vertices covered; extras={len(extras)}")
    if stray:
        print(f"MISMATCH: {len(stray)} extra vertices beyond eps of the hull "
              "boundary", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    if args.threads is not None:
        parallel.set_workers(args.threads)
    kinds = [k.strip() for k in args.dists.split(",") if k.strip()]
    if not kinds:
        raise UsageError("--dists must name at least one distribution")
    for kind in kinds:
        if kind not in KINDS:
            raise UsageError(f"unknown distribution {kind!r}")
        if _kind_dim(kind) != args.dim:
            raise UsageError(f"{kind} is {_kind_dim(kind)}D, got --dim {args.dim}")
    try:
        sizes = [int(v) for v in args.sizes.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not sizes or any(n < 1 for n in sizes):
        raise UsageError("--sizes must be positive integers")
    if args.reps < 1:
        raise UsageError("--reps must be >= 1")

    records = []
    for kind in kinds:
        for n in sizes:
            for rep in range(args.reps):
                points = generate(Distribution(kind, n, seed=rep))
                t0 = time.perf_counter()
                result = _run_hull(points, args.eps_rel)
                ms = (time.perf_counter() - t0) * 1000.0
                records.append(BenchRecord(kind, n, args.dim, rep, ms,
                                           result.iterations, result.vertices.n))
    write_bench_csv(args.out, records)
    if args.plot is not None:
        fig_path = args.plot or str(Path(args.out).with_suffix(".png"))
        render_bench_figure(fig_path, records)
        print(f"wrote {args.out} and {fig_path}")
    else:
        print(f"wrote {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seghull",
        description="Data-parallel Quickhull: generate, hull, verify, benchmark.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a point file")
    gen.add_argument("--dist", required=True, choices=KINDS)
    gen.add_argument("--n", required=True, type=int)
    gen.add_argument("--seed", required=True, type=int)
    gen.add_argument("--dim", required=True, type=int, choices=(2, 3))
    gen.add_argument("--band", type=float, default=0.01)
    gen.add_argument("-o", "--out", required=True)
    gen.set_defaults(func=cmd_gen)

    hull = sub.add_parser("hull", help="compute a convex hull")
    hull.add_argument("input")
    hull.add_argument("--eps-rel", type=float, default=Tolerance().eps_rel)
    hull.add_argument("--threads", type=int)
    hull.add_argument("-o", "--out")
    hull.add_argument("--stats", action="store_true")
    hull.set_defaults(func=cmd_hull)

    verify = sub.add_parser("verify", help="compare the driver against the oracle")
    verify.add_argument("input")
    verify.add_argument("--eps-rel", type=float, default=Tolerance().eps_rel)
    verify.set_defaults(func=cmd_verify)

    bench = sub.add_parser("bench", help="run the timing grid, emit CSV")
    bench.add_argument("--dists", required=True)
    bench.add_argument("--sizes", required=True)
    bench.add_argument("--reps", type=int, default=1)
    bench.add_argument("--dim", required=True, type=int, choices=(2, 3))
    bench.add_argument("--eps-rel", type=float, default=Tolerance().eps_rel)
    bench.add_argument("--threads", type=int)
    bench.add_argument("-o", "--out", required=True)
    bench.add_argument("--plot", nargs="?", const="",
                       help="also render a figure (default: CSV path with .png)")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (PointFileError, EmptyInputError, DegenerateInputError,
            ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
