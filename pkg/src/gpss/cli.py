"""Command-line interface.

Exit codes: 0 reduced / in general position / feasible, 10 decided yes,
20 decided no (or a violation found), 2 bad input, 3 oracle cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional, Sequence

from . import kernel as kern
from .generate import GraphFormatError, gen_grid, gen_random, parse_edge_list, phi
from .geometry import DuplicatePointError, Point, inner_point_count, order_type, same_order_type
from .lines import collinear_groups, collinearity, conflict_profile
from .pointfile import PointFileError, parse_indices, read_points, render_points, write_points
from .solve import (
    BRUTE_FORCE_CAP,
    LINE_COVER_CAP,
    Certificate,
    OracleTooLarge,
    Solution,
    enumerate_triples,
    find_collinear_triple,
    min_line_cover,
    solve_auto,
    solve_brute,
    solve_greedy,
    solve_hitting,
)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_CAP = 3
EXIT_YES = 10
EXIT_NO = 20

_VERDICT_EXIT = {kern.Verdict.REDUCED: EXIT_OK, kern.Verdict.YES: EXIT_YES, kern.Verdict.NO: EXIT_NO}


class InputError(Exception):
    pass


def _load(path: str) -> List[Point]:
    try:
        return read_points(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except (PointFileError, DuplicatePointError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _instance_stats(points: Sequence[Point], k: Optional[int]) -> dict:
    groups = collinear_groups(points)
    out = {"n": len(points)}
    if k is not None:
        out["k"] = k
        out["h"] = len(points) - k
    out["collinearity"] = collinearity(points) if points else 0
    out["line_groups"] = len(groups)
    return out


def _witness(sol: Solution) -> dict:
    return {
        "size": len(sol.chosen),
        "indices": list(sol.chosen),
        "points": [[str(p.x), str(p.y)] for p in sol.points],
    }


def _emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        out.write(f"{key}: {value}\n")


def _timed(args, report: dict, started: float) -> dict:
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - started, 6)
    return report


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GPSS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"GPSS_SEED must be an integer, got {env!r}") from None
    return 0


def cmd_generate(args) -> int:
    header = []
    target = None
    if args.kind == "grid":
        if args.n is None:
            raise InputError("generate grid needs --n")
        points = gen_grid(args.n)
        header.append(f"grid n={args.n}")
    elif args.kind == "random":
        if args.n is None or args.bound is None:
            raise InputError("generate random needs --n and --bound")
        seed = _seed(args)
        try:
            points = gen_random(args.n, args.bound, seed)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        header.append(f"random n={args.n} bound={args.bound} seed={seed}")
    else:
        if args.graph is None:
            raise InputError("generate phi needs --graph")
        try:
            with open(args.graph, encoding="utf-8") as fh:
                g = parse_edge_list(fh.read())
        except OSError as exc:
            raise InputError(f"{args.graph}: {exc.strerror}") from None
        except GraphFormatError as exc:
            raise InputError(f"{args.graph}: {exc}") from None
        out = phi(g)
        points = list(out.points)
        header.append(f"phi of graph with n={g.n} m={g.m}")
        if args.is_k is not None or args.vc_k is not None:
            kk = args.is_k if args.is_k is not None else args.vc_k
            if not 0 <= kk <= g.n:
                raise InputError(f"target must lie in 0..{g.n}")
            target = kk + g.m if args.is_k is not None else g.n + g.m - kk
            header.append(f"k={target}")
    if args.out:
        write_points(args.out, points, header)
        if target is not None:
            print(f"k={target}")
    else:
        sys.stdout.write(render_points(points, header))
        if target is not None:
            print(f"k={target}", file=sys.stderr)
    return EXIT_OK


def _check_k(k) -> None:
    if k < 0:
        raise InputError("k must be non-negative")


def cmd_kernelize(args) -> int:
    started = time.perf_counter()
    points = _load(args.input)
    _check_k(args.k)
    inst = kern.Instance(points, args.k)
    if args.k > len(points):
        res = kern.KernelResult(inst, kern.KernelTrace(), kern.Verdict.NO)
    elif args.mode == "dual":
        res = kern.kernelize_dual(inst)
    else:
        res = kern.kernelize_primal(inst)
    report = {"command": "kernelize", "mode": args.mode, **_instance_stats(points, args.k)}
    report["verdict"] = res.verdict.value
    report["kernel_n"] = res.kernel.n
    report["kernel_k"] = res.kernel.k
    if args.mode == "dual" and args.k <= len(points):
        report["size_bound"] = kern.dual_kernel_bound(inst.h)
    elif res.kernel.k >= 2:
        report["collinearity_bound"] = kern.collinearity_bound(res.kernel.k)
    report["trace"] = res.trace.counts()
    if res.witness is not None:
        index = {p: i for i, p in enumerate(points)}
        idx = sorted(index[p] for p in res.witness)
        report["witness"] = {"size": len(idx), "indices": idx, "points": [[str(points[i].x), str(points[i].y)] for i in idx]}
    if args.kernel_out:
        write_points(args.kernel_out, res.kernel.points, [f"k={res.kernel.k}", f"verdict={res.verdict.value}"])
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            fh.write(res.trace.dumps())
    _emit(_timed(args, report, started), args.json)
    return _VERDICT_EXIT[res.verdict]


def cmd_solve(args) -> int:
    started = time.perf_counter()
    points = _load(args.input)
    if args.algo != "greedy" and args.k is None:
        raise InputError(f"--algo {args.algo} needs --k")
    k = args.k if args.k is not None else 0
    _check_k(k)
    inst = kern.Instance(points, k)
    report = {"command": "solve", "algo": args.algo, **_instance_stats(points, args.k)}
    if args.algo == "brute":
        try:
            sol = solve_brute(inst, cap=args.cap)
        except OracleTooLarge as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CAP
    elif args.algo == "hitting":
        sol = solve_hitting(inst, workers=args.workers) if k <= len(points) else Solution((), Certificate.INFEASIBLE)
    elif args.algo == "greedy":
        sol = solve_greedy(inst)
    else:
        sol = solve_auto(inst, workers=args.workers)
    if sol.certificate is Certificate.FEASIBLE_ONLY:
        report["verdict"] = "feasible"
        code = EXIT_OK
    elif sol.feasible:
        report["verdict"] = "yes"
        code = EXIT_YES
    else:
        report["verdict"] = "no"
        code = EXIT_NO
    report["certificate"] = sol.certificate.value
    if sol.feasible:
        report["witness"] = _witness(sol)
    if sol.stats:
        report["search"] = dict(sol.stats)
    _emit(_timed(args, report, started), args.json)
    return code


def cmd_verify(args) -> int:
    points = _load(args.input)
    try:
        with open(args.solution, encoding="utf-8") as fh:
            indices = parse_indices(fh.read())
        triple = find_collinear_triple(points, indices)
    except OSError as exc:
        raise InputError(f"{args.solution}: {exc.strerror}") from None
    except (PointFileError, IndexError, ValueError) as exc:
        raise InputError(f"{args.solution}: {exc}") from None
    report = {"command": "verify", "n": len(points), "size": len(indices)}
    report["general_position"] = triple is None
    if triple is not None:
        report["violation"] = {
            "indices": list(triple),
            "points": [[str(points[i].x), str(points[i].y)] for i in triple],
        }
    _emit(report, args.json)
    return EXIT_OK if triple is None else EXIT_NO


def cmd_ordertype(args) -> int:
    a_pts = _load(args.input_a)
    ot_a = order_type(a_pts)
    if args.input_b is None:
        report = {"command": "ordertype", "n": ot_a.n, "triples": len(ot_a.sigma)}
        if args.json:
            report["sigma"] = [[i, j, k, s] for (i, j, k), s in sorted(ot_a.sigma.items())]
            _emit(report, True)
        else:
            _emit(report, False)
            for (i, j, k), s in sorted(ot_a.sigma.items()):
                print(f"{i} {j} {k} {s:+d}" if s else f"{i} {j} {k} 0")
        return EXIT_OK
    ot_b = order_type(_load(args.input_b))
    same = same_order_type(ot_a, ot_b)
    report = {"command": "ordertype", "n_a": ot_a.n, "n_b": ot_b.n, "same_order_type": same}
    if not same and ot_a.n == ot_b.n:
        first = next(t for t in sorted(ot_a.sigma) if ot_a.sigma[t] != ot_b.sigma[t])
        report["first_difference"] = {"triple": list(first), "a": ot_a.sigma[first], "b": ot_b.sigma[first]}
    _emit(report, args.json)
    return EXIT_OK if same else EXIT_NO


def cmd_stats(args) -> int:
    points = _load(args.input)
    report = {"command": "stats", **_instance_stats(points, None)}
    report["collinear_triples"] = len(enumerate_triples(points).triples)
    report["max_conflict_measure"] = conflict_profile(points).max_measure()
    report["inner_points"] = inner_point_count(points)
    cover = min_line_cover(points, cap=args.cover_cap)
    report["line_cover"] = "unknown" if cover is None else cover
    _emit(report, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpss", description="General position subset selection toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, timing=False):
        p.add_argument("--json", action="store_true", help="emit the report as one JSON object")
        if timing:
            p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    g = sub.add_parser("generate", help="write a point file")
    g.add_argument("kind", choices=["grid", "random", "phi"])
    g.add_argument("--n", type=int)
    g.add_argument("--bound", type=int)
    g.add_argument("--seed", type=int, help="defaults to $GPSS_SEED, then 0")
    g.add_argument("--graph", help="edge-list file for phi")
    tgt = g.add_mutually_exclusive_group()
    tgt.add_argument("--is-k", type=int, help="independent-set size; prints k = is_k + |E|")
    tgt.add_argument("--vc-k", type=int, help="vertex-cover size; prints k = |V| + |E| - vc_k")
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_generate)

    kz = sub.add_parser("kernelize", help="apply data reduction")
    kz.add_argument("input")
    kz.add_argument("--k", type=int, required=True)
    kz.add_argument("--mode", choices=["primal", "dual"], default="dual")
    kz.add_argument("--kernel-out")
    kz.add_argument("--trace-out")
    common(kz, timing=True)
    kz.set_defaults(func=cmd_kernelize)

    s = sub.add_parser("solve", help="decide or approximate")
    s.add_argument("input")
    s.add_argument("--k", type=int)
    s.add_argument("--algo", choices=["brute", "hitting", "greedy", "auto"], default="auto")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP, help="brute-force size limit")
    common(s, timing=True)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a candidate subset")
    v.add_argument("input")
    v.add_argument("solution", help="file of 0-based indices")
    common(v)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("ordertype", help="print or compare order types")
    o.add_argument("input_a")
    o.add_argument("input_b", nargs="?")
    common(o)
    o.set_defaults(func=cmd_ordertype)

    st = sub.add_parser("stats", help="collinearity statistics")
    st.add_argument("input")
    st.add_argument("--cover-cap", type=int, default=LINE_COVER_CAP)
    common(st)
    st.set_defaults(func=cmd_stats)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
