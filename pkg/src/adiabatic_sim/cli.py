"""Command-line front end: single runs, sweeps, gap scans.

Payloads (JSON for single runs, CSV for tables) go to stdout or --out;
anything diagnostic goes to stderr.  Exit codes: 0 success, 1 usage error,
2 protocol failure.  Masks are accepted in decimal, hex (0x...), or binary
(0b...).  ADIABATIC_SIM_SEED provides the default master seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import SimulatorError
from .evolution import Schedule, assemble_simon, evolve_full
from .hamiltonians import (
    TwoLevelBlock,
    bv_interpolated,
    gap,
    gap_table,
    simon_interpolated,
)
from .measurement import RandomSource
from .oracles import BvMask, simon_build
from .protocols import RunConfig, branch_pair, resolve_config, run_bv, run_simon, sweep
from .qstate import plus_state

SCHEMA_VERSION = "1"

SWEEP_COLUMNS = [
    "axis_value",
    "trials",
    "success_rate",
    "mean_fidelity",
    "mean_rows",
    "mean_restarts",
    "wall_ms",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we own the exit codes
        raise UsageError(message)


def _mask(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _default_seed() -> int:
    raw = os.environ.get("ADIABATIC_SIM_SEED", "0")
    try:
        return int(raw, 0)
    except ValueError:
        raise UsageError(f"ADIABATIC_SIM_SEED must be an integer, got {raw!r}")


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="input register size")
    parser.add_argument("--a", type=_mask, default=None,
                        help="hidden mask (default: drawn from the seed)")
    parser.add_argument("--time", type=float, default=50.0, dest="total_time",
                        help="annealing runtime T (default 50)")
    parser.add_argument("--steps", type=int, default=None,
                        help="integrator steps (default 100*T)")
    parser.add_argument("--path", choices=("factored", "full"), default="factored")
    parser.add_argument("--seed", type=int, default=None,
                        help="master seed (default $ADIABATIC_SIM_SEED or 0)")
    parser.add_argument("--max-repeats", type=int, default=None)
    parser.add_argument("--out", default=None, help="write payload to a file")


def _config_from_args(args: argparse.Namespace, problem: str) -> RunConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    steps = args.steps if args.steps is not None else max(1, round(100 * args.total_time))
    cfg = RunConfig(
        problem=problem,
        n=args.n,
        a=args.a,
        total_time=args.total_time,
        steps=steps,
        path=args.path,
        seed=seed,
        max_repeats=args.max_repeats,
        scramble_seed=getattr(args, "scramble_seed", None),
    )
    try:
        return resolve_config(cfg)
    except SimulatorError as exc:
        raise UsageError(str(exc))


def _record(cfg: RunConfig, results: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "config": asdict(cfg),
        "results": results,
        "provenance": {
            "seed": cfg.seed,
            "build_id": f"adiabatic-sim {__version__}",
            "timestamp": datetime.now(timezone.utc).isoformat(),
        },
    }


def _emit(payload: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)


def cmd_bv(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args, "bv")
    report = run_bv(cfg)
    _emit(json.dumps(_record(cfg, asdict(report)), indent=2) + "\n", args.out)
    return 0 if report.success else 2


def cmd_simon(args: argparse.Namespace) -> int:
    if args.compare_factored and args.path != "full":
        raise UsageError("--compare-factored needs --path full")
    cfg = _config_from_args(args, "simon")
    report = run_simon(cfg)
    results = asdict(report)
    if args.compare_factored:
        oracle = simon_build(cfg.n, cfg.a, cfg.scramble_seed)
        full = evolve_full(
            simon_interpolated(oracle),
            plus_state(cfg.n, cfg.n - 1),
            Schedule(cfg.total_time, cfg.steps),
        )
        phi0, phi1 = branch_pair("simon", cfg.total_time, cfg.steps)
        factored = assemble_simon(oracle, phi0, phi1)
        deviation = float(np.max(np.abs(full.final_state.amps - factored.amps)))
        results["max_factored_deviation"] = deviation
    _emit(json.dumps(_record(cfg, results), indent=2) + "\n", args.out)
    return 0 if report.success else 2


def cmd_sweep(args: argparse.Namespace) -> int:
    if not args.values.strip():
        raise UsageError("--values must be a non-empty comma-separated list")
    cast = float if args.axis == "T" else int
    try:
        values = [cast(v) for v in args.values.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --values entry: {exc}")
    if not values:
        raise UsageError("--values must be a non-empty comma-separated list")
    seed = args.seed if args.seed is not None else _default_seed()
    steps = args.steps if args.steps is not None else max(1, round(100 * args.total_time))
    base = RunConfig(
        problem=args.problem,
        n=args.n,
        a=args.a,
        total_time=args.total_time,
        steps=steps,
        path=args.path,
        seed=seed,
        scramble_seed=getattr(args, "scramble_seed", None),
    )
    try:
        rows = sweep(args.axis, values, base, args.trials)
    except SimulatorError as exc:
        raise UsageError(str(exc))
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([getattr(row, col) for col in SWEEP_COLUMNS])
    _emit(buffer.getvalue(), args.out)
    return 0


def cmd_gap(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.grid < 3:
        raise UsageError("--grid must be at least 3")
    try:
        if args.two_level:
            points = np.linspace(0.0, 1.0, args.grid)
            table = [(float(s), gap(TwoLevelBlock(0), float(s))) for s in points]
        else:
            if args.n is None:
                raise UsageError("--n is required unless --two-level is given")
            rng = RandomSource(seed, stream=0)
            if args.problem == "bv":
                a = args.a if args.a is not None else rng.randrange(1 << args.n)
                h = bv_interpolated(BvMask(args.n, a))
            else:
                a = args.a if args.a is not None else 1 + rng.randrange((1 << args.n) - 1)
                h = simon_interpolated(simon_build(args.n, a))
            table = gap_table(h, args.grid)
    except SimulatorError as exc:
        raise UsageError(str(exc))
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["s", "gap"])
    for s, value in table:
        writer.writerow([f"{s:.10g}", f"{value:.15g}"])
    _emit(buffer.getvalue(), args.out)
    s_min, gap_min = min(table, key=lambda pair: pair[1])
    print(f"min gap {gap_min:.6g} at s = {s_min:.6g}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adiabatic-sim",
                     description="Adiabatic BV / Simon simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bv = sub.add_parser("bv", help="run the Bernstein-Vazirani protocol")
    _add_run_flags(p_bv)
    p_bv.set_defaults(func=cmd_bv)

    p_simon = sub.add_parser("simon", help="run Simon's protocol")
    _add_run_flags(p_simon)
    p_simon.add_argument("--scramble-seed", type=int, default=None,
                         help="scramble the oracle's output labels")
    p_simon.add_argument("--compare-factored", action="store_true",
                         help="with --path full, also report the max deviation "
                              "from the factored state")
    p_simon.set_defaults(func=cmd_simon)

    p_sweep = sub.add_parser("sweep", help="aggregate runs over an axis")
    p_sweep.add_argument("--axis", choices=("n", "T", "steps"), required=True)
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--problem", choices=("bv", "simon"), required=True)
    p_sweep.add_argument("--n", type=int, default=4)
    p_sweep.add_argument("--a", type=_mask, default=None)
    p_sweep.add_argument("--time", type=float, default=50.0, dest="total_time")
    p_sweep.add_argument("--steps", type=int, default=None)
    p_sweep.add_argument("--path", choices=("factored", "full"), default="factored")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--scramble-seed", type=int, default=None)
    p_sweep.add_argument("--trials", type=int, default=100)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_gap = sub.add_parser("gap", help="scan the spectral gap along the schedule")
    p_gap.add_argument("--problem", choices=("bv", "simon"), default="bv")
    p_gap.add_argument("--n", type=int, default=None)
    p_gap.add_argument("--a", type=_mask, default=None)
    p_gap.add_argument("--grid", type=int, default=201)
    p_gap.add_argument("--two-level", action="store_true",
                       help="scan one decoupled branch instead of a dense system")
    p_gap.add_argument("--seed", type=int, default=None)
    p_gap.add_argument("--out", default=None)
    p_gap.set_defaults(func=cmd_gap)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
