"""Command-line front end: bounds, ratio sweeps, and the refuter.

Exit status: 0 success or certificate, 2 coverage failure / uncovered
witness, 1 usage or parameter-regime errors.  All emitted CSV/JSON is
deterministic for a given configuration (no timestamps in data files).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from .cover import exact_q_assignment
from .formulas import (
    CoverParams,
    InfeasibleRegime,
    InstanceParams,
    NoFiniteHorizon,
    TrivialRegime,
    growth_factor_delta,
    horizon_estimate,
    optimal_alpha,
    ratio_lower_bound,
)
from .fractional import fractional_ratio
from .potential import GrowthTrace, detect_gap, refute
from .simulator import sweep_rows, worst_ratio
from .strategy import (
    CoverInterval,
    all_cover_intervals,
    load_strategies,
    make_exponential_strategy,
    make_geometric_line_strategy,
)

SWEEP_HEADER = "# raysearch sweep v1"
TRACE_HEADER = "# raysearch trace v1"
ASSIGNMENT_HEADER = "# raysearch assignment v1"

_GEN_HORIZON_CAP = 1e7


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to status 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _instance(args) -> InstanceParams:
    return InstanceParams(args.m, args.k, args.f)


def cmd_bound(args) -> int:
    if args.eta is not None:
        value = fractional_ratio(args.eta)
        if args.json:
            print(json.dumps({"eta": args.eta, "ratio": value}, sort_keys=True))
        else:
            print(f"C(eta={args.eta}) = {value:.10g}")
        return 0
    p = _instance(args)
    lam0 = ratio_lower_bound(p)
    alpha = optimal_alpha(p)
    row = {
        "m": p.m,
        "k": p.k,
        "f": p.f,
        "q": p.q,
        "s": p.s,
        "rho": p.rho,
        "lambda0": lam0,
        "alpha": alpha,
    }
    if args.lam is not None:
        row["delta"] = growth_factor_delta(p.s, p.k, CoverParams(args.lam).mu)
    if args.json:
        print(json.dumps(row, sort_keys=True))
    else:
        print(f"m={p.m} k={p.k} f={p.f}  q={p.q} s={p.s} rho={p.rho:.6g}")
        print(f"lambda0 = {lam0:.10g}")
        print(f"alpha   = {alpha:.10g}")
        if "delta" in row:
            print(f"delta({args.lam}) = {row['delta']:.10g}")
    return 0


def _build_strategies(args, p: InstanceParams, N: float, mode: str = "orc"):
    if args.strategy:
        return load_strategies(args.strategy)
    alpha = args.alpha if args.alpha is not None else optimal_alpha(p)
    horizon = min(N, _GEN_HORIZON_CAP)
    if mode == "line":
        return make_geometric_line_strategy(p, alpha, horizon)
    return make_exponential_strategy(p, alpha, horizon)


def _write_sweep_csv(path: str, rows) -> None:
    with open(path, "w") as fh:
        fh.write(SWEEP_HEADER + "\n")
        fh.write("ray,x,just_above,tau,ratio,robot_order\n")
        for target, just_above, report in rows:
            order = "|".join(str(r) for r, _ in report.visitors)
            tau = "" if report.tau is None else repr(report.tau)
            ratio = "" if report.ratio is None else repr(report.ratio)
            fh.write(
                f"{target.ray},{target.x!r},{int(just_above)},{tau},{ratio},{order}\n"
            )


def cmd_simulate(args) -> int:
    p = _instance(args)
    strategies = _build_strategies(args, p, args.N)
    sup, witness = worst_ratio(strategies, p, args.N)
    if args.csv:
        rows = sweep_rows(strategies, p, args.N, dense=args.dense, rel_step=args.rel_step)
        _write_sweep_csv(args.csv, rows)
    try:
        lam0 = ratio_lower_bound(p)
    except (TrivialRegime, InfeasibleRegime):
        lam0 = None
    summary = {
        "sup_ratio": sup if math.isfinite(sup) else None,
        "covered": math.isfinite(sup),
        "witness": {"ray": witness.ray, "x": witness.x},
        "lambda0": lam0,
        "gap": (lam0 - sup) if lam0 is not None and math.isfinite(sup) else None,
        "N": args.N,
    }
    text = json.dumps(summary, sort_keys=True, indent=2)
    if args.summary:
        with open(args.summary, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if math.isfinite(sup) else 2


def _write_trace_csv(path: str, trace: GrowthTrace | None) -> None:
    with open(path, "w") as fh:
        fh.write(TRACE_HEADER + "\n")
        fh.write("step,robot,mu_star,x,step_ratio,log_potential\n")
        if trace is None:
            return
        for s in trace.steps:
            fh.write(
                f"{s.index},{s.robot},{s.mu_star!r},{s.x!r},"
                f"{s.step_ratio!r},{s.log_potential_after!r}\n"
            )


def _write_assignment_csv(path: str, assigned) -> None:
    with open(path, "w") as fh:
        fh.write(ASSIGNMENT_HEADER + "\n")
        fh.write("robot,round,t_prime,t\n")
        for iv in assigned:
            fh.write(f"{iv.robot},{iv.round_index},{iv.left!r},{iv.right!r}\n")


def cmd_refute(args) -> int:
    p = _instance(args)
    if args.auto_horizon:
        C = args.C if args.C is not None else optimal_alpha(p) ** (2 * p.m * p.k)
        N = horizon_estimate(p, args.lam, C)
    else:
        if args.N is None:
            raise ValueError("refute: provide -N or --auto-horizon")
        N = args.N
    strategies = _build_strategies(args, p, N, mode=args.mode)
    verdict = refute(strategies, args.lam, p, N, mode=args.mode)
    doc = verdict.to_dict()
    if verdict.kind == "certificate" and args.gap_constant is not None:
        covers = all_cover_intervals(strategies, CoverParams(args.lam))
        mult = verdict.params["multiplicity"]
        if mult > 0:
            assigned = exact_q_assignment(covers, mult, min(N, _GEN_HORIZON_CAP))
            gap = detect_gap(assigned, args.gap_constant, CoverParams(args.lam))
            doc["gap"] = {
                "case": gap.case,
                "robot": gap.robot,
                "round": gap.round_index,
                "ratio": gap.ratio,
                "sub_lo": gap.sub_lo,
                "sub_hi": gap.sub_hi,
            }
    if args.trace:
        _write_trace_csv(args.trace, verdict.trace)
    if args.assignment and verdict.kind == "certificate":
        covers = all_cover_intervals(strategies, CoverParams(args.lam))
        mult = verdict.params["multiplicity"]
        assigned = exact_q_assignment(covers, mult, min(N, _GEN_HORIZON_CAP)) if mult else []
        _write_assignment_csv(args.assignment, assigned)
    text = json.dumps(doc, sort_keys=True, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if verdict.kind == "certificate" else 2


def _add_instance_args(sub, need_fault: bool = True):
    sub.add_argument("-m", type=int, default=2, help="ray count (default 2)")
    sub.add_argument("-k", type=int, default=1, help="robot count (default 1)")
    sub.add_argument("-f", type=int, default=0, help="faulty count (default 0)")


def build_parser() -> _Parser:
    parser = _Parser(prog="raysearch")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("bound", help="closed-form bounds and strategy constants")
    _add_instance_args(b)
    b.add_argument("--lam", type=float, default=None, help="also print delta(lambda)")
    b.add_argument("--eta", type=float, default=None, help="fractional ratio C(eta)")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    s = subs.add_parser("simulate", help="worst-case ratio sweep of a strategy set")
    _add_instance_args(s)
    s.add_argument("-N", type=float, default=1e4, help="sweep horizon (default 1e4)")
    s.add_argument("--alpha", type=float, default=None, help="override strategy base")
    s.add_argument("--strategy", help="load strategies from file instead of generating")
    s.add_argument("--csv", help="write per-breakpoint rows here")
    s.add_argument("--summary", help="write the summary JSON here")
    s.add_argument("--dense", action="store_true", help="dense-grid rows instead of breakpoints")
    s.add_argument("--rel-step", type=float, default=1e-3)
    s.set_defaults(func=cmd_simulate)

    r = subs.add_parser("refute", help="verify/refute a multicover, audit the potential")
    _add_instance_args(r)
    r.add_argument("--lam", type=float, required=True, help="candidate ratio lambda")
    r.add_argument("-N", type=float, default=None, help="cover horizon")
    r.add_argument("--auto-horizon", action="store_true", help="N from horizon_estimate")
    r.add_argument("-C", type=float, default=None, help="gap constant for --auto-horizon")
    r.add_argument("--mode", choices=["orc", "line"], default="orc")
    r.add_argument("--alpha", type=float, default=None)
    r.add_argument("--strategy", help="load strategies from file instead of generating")
    r.add_argument("--json", help="write the verdict JSON here (always printed)")
    r.add_argument("--trace", help="write the growth-trace CSV here")
    r.add_argument("--assignment", help="write the exact assignment CSV here")
    r.add_argument("--gap-constant", type=float, default=None, help="run the gap detector")
    r.set_defaults(func=cmd_refute)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleRegime as exc:
        print(f"raysearch: infeasible regime: {exc}", file=sys.stderr)
        return 1
    except TrivialRegime as exc:
        print(f"raysearch: trivial regime: {exc}", file=sys.stderr)
        return 1
    except NoFiniteHorizon as exc:
        print(f"raysearch: no finite horizon: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"raysearch: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
