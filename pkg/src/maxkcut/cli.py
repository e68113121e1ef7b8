"""Command-line front end: solve, round, ratio-table, verify, pipeline.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.  Every
randomized command prints the effective seed so runs can be replayed, and
output files land in --out under stable names (solution.json,
partition.json, trials.csv, ratio_table.csv, ratio_table.json, verify.json).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import formulas, rounding, sdp
from .graph import GraphFormatError, complete_graph, parse_graph
from ._kernels import BACKEND

USAGE_ERROR = 2
VERIFY_FAILURE = 1


def _uint64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _k_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated list of integers")


def _load_graph(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return parse_graph(f)
    except OSError as exc:
        raise CliError(f"cannot read graph file {path}: {exc}")
    except GraphFormatError as exc:
        raise CliError(f"bad graph file {path}: {exc}")


class CliError(Exception):
    pass


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit(args, human_lines, doc):
    if args.json:
        print(json.dumps(doc))
    else:
        for line in human_lines:
            print(line)


def cmd_solve(args) -> int:
    graph = _load_graph(args.graph)
    if args.gram:
        try:
            with open(args.gram, "r", encoding="utf-8") as f:
                gram = sdp.parse_gram_text(f)
        except OSError as exc:
            raise CliError(f"cannot read Gram file {args.gram}: {exc}")
        except ValueError as exc:
            raise CliError(f"bad Gram file {args.gram}: {exc}")
        solution = sdp.load_gram(gram, args.k, graph)
    else:
        problem = sdp.SdpProblem(graph=graph, k=args.k, rank=args.rank)
        solution = sdp.solve(problem, seed=args.seed)
    out = _out_dir(args)
    sdp.save_solution(solution, out / "solution.json")
    doc = {
        "objective": solution.objective,
        "n": solution.n,
        "d": solution.d,
        "k": solution.k,
        "iterations": solution.iterations,
        "converged": solution.converged,
        "max_norm_violation": solution.max_norm_violation,
        "max_dot_violation": solution.max_dot_violation,
        "seed": args.seed,
        "solution_file": str(out / "solution.json"),
    }
    _emit(
        args,
        [
            f"seed: {args.seed}",
            f"objective: {solution.objective:.9f}",
            f"violations: norm {solution.max_norm_violation:.2e}, "
            f"edge dot {solution.max_dot_violation:.2e}",
            f"iterations: {solution.iterations} (converged: {solution.converged})",
            f"wrote {out / 'solution.json'}",
        ],
        doc,
    )
    return 0


def cmd_round(args) -> int:
    graph = _load_graph(args.graph)
    if args.scheme == "uniform":
        solution = None
        k = args.k
        if k is None:
            raise CliError("uniform rounding requires --k")
    else:
        try:
            solution = sdp.load_solution(args.solution)
        except OSError as exc:
            raise CliError(f"cannot read solution file {args.solution}: {exc}")
        except (ValueError, KeyError) as exc:
            raise CliError(f"bad solution file {args.solution}: {exc}")
        if solution.n != graph.n:
            raise CliError("solution and graph disagree on vertex count")
        k = args.k if args.k is not None else solution.k
        if args.k is not None and args.k != solution.k:
            raise CliError(
                f"k mismatch: solution was solved for k={solution.k}, got --k {args.k}"
            )
    result = rounding.run_trials(solution, graph, args.scheme, k, args.trials, args.seed)
    out = _out_dir(args)
    with open(out / "partition.json", "w", encoding="utf-8") as f:
        json.dump(result.best.to_dict(), f)
        f.write("\n")
    with open(out / "trials.csv", "w", encoding="utf-8") as f:
        result.write_csv(f)
    doc = {
        "scheme": args.scheme,
        "k": k,
        "seed": args.seed,
        "trials": result.trials,
        "mean": result.mean,
        "stderr": result.stderr,
        "best": result.best.value,
        "partition_file": str(out / "partition.json"),
        "trials_file": str(out / "trials.csv"),
    }
    _emit(
        args,
        [
            f"seed: {args.seed}",
            f"scheme: {args.scheme}, k: {k}, trials: {result.trials}",
            f"mean cut: {result.mean:.6f} +- {result.stderr:.6f}",
            f"best cut: {result.best.value:.6f}",
            f"wrote {out / 'partition.json'} and {out / 'trials.csv'}",
        ],
        doc,
    )
    return 0


def cmd_ratio_table(args) -> int:
    if not args.k:
        raise CliError("need at least one k")
    for k in args.k:
        if k < 3:
            raise CliError(
                f"ratio table is defined for k >= 3 (got {k}); "
                "the k=2 worst case is descriptive only, see worst_case_ratio"
            )
    reports = formulas.ratio_table(args.k, mc_samples=args.mc_samples, seed=args.seed)
    rows = formulas.ratio_table_rows(reports, include_refs=args.refs)
    csv_text = formulas.ratio_table_csv(reports, include_refs=args.refs)
    out = _out_dir(args)
    (out / "ratio_table.csv").write_text(csv_text, encoding="utf-8")
    (out / "ratio_table.json").write_text(json.dumps(rows) + "\n", encoding="utf-8")
    _emit(args, csv_text.rstrip("\n").splitlines(), rows)
    return 0


def _verify_point(args, results):
    r, delta = args.r, args.delta
    est = formulas.mc_angle_cdf(r, delta, args.samples, args.seed)
    exact = formulas.angle_cdf(r, delta)
    tol = args.tol if args.tol is not None else 3.0 * max(est.stderr, 1e-12)
    results.append(
        {
            "check": "point",
            "observed": abs(est.value - exact),
            "tolerance": tol,
            "samples": args.samples,
            "detail": f"r={r} delta={delta} mc={est.value:.6f} exact={exact:.6f}",
            "passed": abs(est.value - exact) < tol,
        }
    )


def _verify_cdf_agreement(args, results):
    tol = args.tol if args.tol is not None else 0.005
    worst = 0.0
    worst_r = None
    for r in (-0.9, -0.5, 0.0, 0.5, 0.9):
        gap, _, _ = formulas.empirical_cdf_gap(r, args.samples, args.seed)
        if gap > worst:
            worst, worst_r = gap, r
    results.append(
        {
            "check": "cdf-agreement",
            "observed": worst,
            "tolerance": tol,
            "samples": args.samples,
            "detail": f"sup gap over 64-point delta grid, worst at r={worst_r}",
            "passed": worst < tol,
        }
    )


def _verify_modk_normalization(args, results):
    tol = args.tol if args.tol is not None else 1e-10
    worst = 0.0
    for k in range(2, 13):
        rs = [-1.0 / (k - 1), -0.9, -0.25, 0.0, 0.5, 0.9, 1.0]
        for r in rs:
            total = sum(formulas.modk_probability(r, k, c) for c in range(k))
            worst = max(worst, abs(total - 1.0))
    results.append(
        {
            "check": "modk-normalization",
            "observed": worst,
            "tolerance": tol,
            "samples": 0,
            "detail": "max |sum_c P(diff=c) - 1| over k=2..12 and an r grid",
            "passed": worst < tol,
        }
    )


def _verify_k3_equivalence(args, results):
    tol = args.tol if args.tol is not None else 0.005
    graph = complete_graph(3)
    solution = sdp.solve(sdp.SdpProblem(graph=graph, k=3), seed=args.seed)
    disc = rounding.edge_cut_frequencies(
        solution, graph, "disc", 3, args.samples, args.seed
    ).frequencies
    simp = rounding.edge_cut_frequencies(
        solution, graph, "simplex", 3, args.samples, args.seed
    ).frequencies
    gap = float(np.max(np.abs(disc - simp)))
    results.append(
        {
            "check": "k3-equivalence",
            "observed": gap,
            "tolerance": tol,
            "samples": args.samples,
            "detail": f"per-edge disc {np.round(disc, 5).tolist()} "
            f"vs simplex {np.round(simp, 5).tolist()}",
            "passed": gap < tol,
        }
    )


def cmd_verify(args) -> int:
    results = []
    checks = {
        "cdf-agreement": _verify_cdf_agreement,
        "modk-normalization": _verify_modk_normalization,
        "k3-equivalence": _verify_k3_equivalence,
    }
    if args.r is not None or args.delta is not None or args.check == "point":
        if args.r is None or args.delta is None:
            raise CliError("point check needs both --r and --delta")
        _verify_point(args, results)
    elif args.check == "all":
        for fn in checks.values():
            fn(args, results)
    else:
        checks[args.check](args, results)

    all_passed = all(r["passed"] for r in results)
    lines = [f"seed: {args.seed}"]
    for r in results:
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(
            f"{status} {r['check']}: observed {r['observed']:.3e} "
            f"(tolerance {r['tolerance']:.3e}, samples {r['samples']}) {r['detail']}"
        )
    doc = {"seed": args.seed, "passed": all_passed, "checks": results}
    if args.out is not None:
        out = _out_dir(args)
        (out / "verify.json").write_text(json.dumps(doc) + "\n", encoding="utf-8")
    _emit(args, lines, doc)
    return 0 if all_passed else VERIFY_FAILURE


def cmd_pipeline(args) -> int:
    graph = _load_graph(args.graph)
    problem = sdp.SdpProblem(graph=graph, k=args.k, rank=args.rank)
    solution = sdp.solve(problem, seed=args.seed)
    result = rounding.run_trials(
        solution, graph, args.scheme, args.k, args.trials, args.seed
    )
    out = _out_dir(args)
    sdp.save_solution(solution, out / "solution.json")
    with open(out / "partition.json", "w", encoding="utf-8") as f:
        json.dump(result.best.to_dict(), f)
        f.write("\n")
    with open(out / "trials.csv", "w", encoding="utf-8") as f:
        result.write_csv(f)
    ratio = result.best.value / solution.objective if solution.objective > 0 else math.nan
    doc = {
        "objective": solution.objective,
        "converged": solution.converged,
        "scheme": args.scheme,
        "k": args.k,
        "trials": result.trials,
        "mean": result.mean,
        "best": result.best.value,
        "best_over_objective": ratio,
        "seed": args.seed,
        "out": str(out),
    }
    _emit(
        args,
        [
            f"seed: {args.seed}",
            f"objective: {solution.objective:.9f} (converged: {solution.converged})",
            f"scheme: {args.scheme}, k: {args.k}, trials: {result.trials}",
            f"mean cut: {result.mean:.6f}, best cut: {result.best.value:.6f}",
            f"best / objective: {ratio:.6f}",
            f"wrote solution.json, partition.json, trials.csv in {out}",
        ],
        doc,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxkcut",
        description="Max-k-Cut: vector relaxation solver, randomized rounding, "
        f"exact cut-probability formulas (kernel backend: {BACKEND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--out", default=".", help="output directory (default: .)")
        p.add_argument("--json", action="store_true", help="machine-readable stdout")
        if seed:
            p.add_argument("--seed", type=_uint64, default=0)

    p = sub.add_parser("solve", help="solve the relaxation for a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rank", type=int, default=None, help="embedding dimension override")
    p.add_argument("--gram", default=None, help="load a Gram matrix instead of solving")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("round", help="round a solution file into k parts")
    p.add_argument("--graph", required=True)
    p.add_argument("--solution", default="solution.json")
    p.add_argument("--scheme", required=True, choices=rounding.SCHEMES)
    p.add_argument("--k", type=int, default=None, help="defaults to the solution's k")
    p.add_argument("--trials", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_round)

    p = sub.add_parser("ratio-table", help="guarantee constants per k")
    p.add_argument("--k", type=_k_list, required=True, help="comma-separated, each >= 3")
    p.add_argument("--refs", action="store_true", help="include published FJ/DKPW columns")
    p.add_argument("--mc-samples", type=int, default=0, help="optional MC column sample count")
    common(p)
    p.set_defaults(func=cmd_ratio_table)

    p = sub.add_parser("verify", help="statistical checks of the formulas")
    p.add_argument(
        "--check",
        default="all",
        choices=["all", "cdf-agreement", "modk-normalization", "k3-equivalence", "point"],
    )
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--tol", type=float, default=None, help="tolerance override")
    p.add_argument("--r", type=float, default=None, help="correlation for the point check")
    p.add_argument("--delta", type=float, default=None, help="angle for the point check")
    p.add_argument("--out", default=None, help="write verify.json here")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=_uint64, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pipeline", help="solve + round + report")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--scheme", default="disc", choices=rounding.SCHEMES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--rank", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
