"""Command-line interface: design, sweep, check, simulate.

All subcommands read the eight environment parameters from a key=value
config file (plain decimals, '#' comments). Exit codes: 0 on success (for
design/check: the protocol is feasible/sustainable), 2 when the analysis
finishes but the answer is negative (infeasible design, unsustainable
protocol), 1 for input errors. CSV output is deterministic byte for byte
at fixed inputs.
"""

from __future__ import annotations

import argparse
import math
import sys

from .designer import (
    OUTCOME_CSV_HEADER,
    DesignerConfig,
    DesignOutcome,
    brute_force_oracle,
    optimize,
    outcome_csv_row,
)
from .errors import ConfigError, DegenerateChain, Infeasible
from .incentives import is_sustainable
from .params import DesignParams, design_violations, load_config, validate, with_params
from .simulate import SimConfig, run_chain, run_utility
from .tableio import csv_line, fmt, write_lines

_VARY_KEYS = ("c1", "c2", "s1", "s2", "d", "delta", "eps1", "eps2")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; here 2 means "infeasible",
    # so input problems of any kind are remapped to 1.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="contest-rating", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("design", help="optimize the protocol for a config")
    p.add_argument("config", help="key=value environment file")
    p.add_argument("--grid-m", type=int, default=100, help="gamma1 grid resolution")
    p.add_argument("--oracle", action="store_true", help="cross-check with the grid oracle")
    p.add_argument("--oracle-r", type=int, default=100, help="oracle grid resolution")
    p.add_argument("--out", help="also write the outcome as a one-row CSV")

    p = sub.add_parser("sweep", help="re-optimize along one parameter axis")
    p.add_argument("config")
    p.add_argument("--vary", required=True, choices=_VARY_KEYS)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--grid-m", type=int, default=100)
    p.add_argument("--out", help="CSV destination (default stdout)")

    p = sub.add_parser("check", help="sustainability report for a given protocol")
    p.add_argument("config")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma1", type=float, required=True)
    p.add_argument("--gamma0", type=float, default=0.0)

    p = sub.add_parser("simulate", help="Monte-Carlo the protocol against the closed forms")
    p.add_argument("config")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma1", type=float, required=True)
    p.add_argument("--gamma0", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--periods", type=int, default=2000)
    p.add_argument("--replicates", type=int, default=16)
    p.add_argument("--population", type=int, default=50, help="matched pairs per replicate")
    p.add_argument("--out", help="CSV destination (default stdout)")
    return parser


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _cmd_design(args) -> int:
    params = load_config(args.config)
    config = DesignerConfig(gamma_grid_m=args.grid_m, oracle_grid_r=args.oracle_r)
    try:
        outcome = optimize(params, config)
        code = 0
    except Infeasible as exc:
        outcome = DesignOutcome(params=params, feasible=False, cases=exc.cases)
        code = 2
    lines = outcome.key_value_lines()
    if args.oracle:
        res = brute_force_oracle(params, config)
        lines.append(f"oracle_feasible={fmt(res.feasible)}")
        lines.append(f"oracle_alpha={fmt(res.alpha)}")
        lines.append(f"oracle_beta={fmt(res.beta)}")
        lines.append(f"oracle_gamma1={fmt(res.gamma1)}")
        lines.append(f"oracle_utility={fmt(res.utility)}")
        if outcome.feasible and res.feasible:
            lines.append(f"oracle_gap={fmt(abs(res.utility - outcome.utility))}")
    write_lines(None, lines)
    if args.out:
        write_lines(args.out, [OUTCOME_CSV_HEADER, outcome_csv_row(outcome)])
    return code


def _cmd_sweep(args) -> int:
    params = load_config(args.config)
    if args.step <= 0.0:
        return _fail(f"--step must be positive, got {args.step!r}")
    if args.start > args.stop:
        return _fail(f"empty sweep: --from {args.start!r} exceeds --to {args.stop!r}")
    config = DesignerConfig(gamma_grid_m=args.grid_m)
    lines = [OUTCOME_CSV_HEADER]
    k = 0
    while True:
        value = args.start + k * args.step
        if value > args.stop + 1e-12:
            break
        k += 1
        point = with_params(params, **{args.vary: value})
        if not validate(point).ok:
            lines.append(outcome_csv_row(DesignOutcome(params=point, feasible=False), invalid=True))
            continue
        try:
            outcome = optimize(point, config)
        except Infeasible as exc:
            outcome = DesignOutcome(params=point, feasible=False, cases=exc.cases)
        lines.append(outcome_csv_row(outcome))
    write_lines(args.out, lines)
    return 0


def _cmd_check(args) -> int:
    params = load_config(args.config)
    design = DesignParams(args.alpha, args.beta, args.gamma1, args.gamma0)
    problems = design_violations(design, require_price_gap=False)
    if problems:
        return _fail("; ".join(problems))
    report = is_sustainable(design, params)
    lines = ["worker,constraint,margin"]
    for worker, constraint, margin in report.rows():
        lines.append(csv_line([worker, constraint, margin]))
    lines.append(f"sustainable={fmt(report.sustainable)}")
    write_lines(None, lines)
    return 0 if report.sustainable else 2


def _cmd_simulate(args) -> int:
    params = load_config(args.config)
    design = DesignParams(args.alpha, args.beta, args.gamma1, args.gamma0)
    problems = design_violations(design, require_price_gap=False)
    if problems:
        return _fail("; ".join(problems))
    if params.delta > 0.0:
        needed = math.ceil(math.log(1e-6) / math.log(params.delta))
    else:
        needed = 1
    chain_cfg = SimConfig(
        periods=args.periods,
        replicates=args.replicates,
        population=args.population,
        seed=args.seed,
    )
    util_cfg = SimConfig(
        periods=max(args.periods, needed),
        replicates=args.replicates,
        population=args.population,
        seed=args.seed,
    )
    try:
        chain = run_chain(design, params, chain_cfg)
        util = run_utility(design, params, util_cfg)
    except DegenerateChain as exc:
        return _fail(str(exc))
    lines = [chain.CSV_HEADER] + chain.rows() + util.rows()
    write_lines(args.out, lines)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {
        "design": _cmd_design,
        "sweep": _cmd_sweep,
        "check": _cmd_check,
        "simulate": _cmd_simulate,
    }[args.command]
    try:
        return handler(args)
    except (ConfigError, OSError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
