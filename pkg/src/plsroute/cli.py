"""Command-line front end for the outage experiments.

Subcommands mirror the experiment runners; all output is CSV (stdout or
``--out``).  Exit codes: 0 success, 1 usage or parameter validation error,
2 runtime/I/O error, 3 unreachable destination (route-demo only).

An optional ``--config`` file supplies ``key = value`` defaults (keys match
flag names with dashes or underscores); explicit flags take precedence.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from .experiments import (
    ExperimentSpec,
    run_optimal_tradeoff,
    run_route_demo,
    run_table_fixture,
    run_tradeoff_curve,
    run_validate_cop,
    run_validate_sop,
)
from .geometry import load_scenario, save_scenario
from .params import ParameterError, SystemParams

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_UNREACHABLE = 3

DESK_ROUNDS = 1_000_000
PAPER_ROUNDS = 10_000_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the CLI contract wants 1.
    def error(self, message):
        raise UsageError(message)


def _float_list(text: str):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _add_common(sub, *, needs_seed: bool, needs_rounds: bool):
    sub.add_argument("--config", help="key = value defaults file; flags win")
    sub.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    sub.add_argument("--lambda-j", type=float, default=1e-3, help="jammer density")
    sub.add_argument("--lambda-e", type=float, default=1e-4, help="eavesdropper density")
    sub.add_argument("--gamma-c", type=float, default=1.0, help="decoding SIR threshold")
    sub.add_argument("--gamma-e", type=float, default=1.0, help="interception SIR threshold")
    sub.add_argument("--p-jam", type=float, default=1.0, help="jammer transmit power")
    sub.add_argument("--alpha", type=float, default=4.0, help="path-loss exponent (> 2)")
    if needs_seed:
        sub.add_argument("--seed", type=int, required=True, help="experiment seed (required)")
    if needs_rounds:
        sub.add_argument("--rounds", type=int, default=None, help="Monte Carlo rounds per point")
        sub.add_argument(
            "--paper-scale", action="store_true",
            help=f"use {PAPER_ROUNDS} rounds instead of the {DESK_ROUNDS} default",
        )
        sub.add_argument("--threads", type=int, default=1, help="worker threads for the Monte Carlo batches")


def build_parser() -> "_Parser":
    parser = _Parser(prog="plsroute", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate-cop", help="Monte Carlo vs closed-form connection outage")
    _add_common(p, needs_seed=True, needs_rounds=True)
    p.add_argument("--lambda-j-grid", type=_float_list, default=(1e-4, 1e-3, 1e-2))
    p.add_argument("--distances", type=_float_list, default=(3.0, 4.0, 5.0))
    p.add_argument("--n-hops", type=int, default=5)
    p.add_argument("--power", type=float, default=1.0)

    p = subs.add_parser("validate-sop", help="Monte Carlo vs closed-form secrecy outage")
    _add_common(p, needs_seed=True, needs_rounds=True)
    p.add_argument("--lambda-j-grid", type=_float_list, default=(1e-3, 1e-2))
    p.add_argument("--lambda-e-grid", type=_float_list, default=(1e-4, 2e-4, 5e-4, 1e-3))
    p.add_argument("--n-hops", type=int, default=5)
    p.add_argument("--power", type=float, default=1.0)

    p = subs.add_parser("tradeoff-curve", help="closed-form COP-SOP pairs along the power sweep")
    _add_common(p, needs_seed=False, needs_rounds=False)
    p.add_argument("--distances", type=_float_list, default=(3.0, 4.0, 5.0))
    p.add_argument("--n-hops", type=int, default=5)

    p = subs.add_parser("optimal-tradeoff", help="optimal value and powers versus beta")
    _add_common(p, needs_seed=False, needs_rounds=False)
    p.add_argument("--beta-grid", type=_float_list, default=())
    p.add_argument("--distances", type=_float_list, default=(5.0,))
    p.add_argument("--n-hops", type=int, default=5)

    p = subs.add_parser("table-fixture", help="reproduce a published allocation table")
    _add_common(p, needs_seed=False, needs_rounds=False)
    p.add_argument("--fixture", default="table2", help="table1 or table2")

    p = subs.add_parser("route-demo", help="route one random scenario both ways")
    _add_common(p, needs_seed=True, needs_rounds=False)
    p.add_argument("--beta-so", type=float, default=0.4)
    p.add_argument("--beta-co", type=float, default=0.4)
    p.add_argument("--max-range", type=float, default=8.0)
    p.add_argument("--n-legit", type=int, default=20)
    p.add_argument("--scenario-out", help="write the sampled scenario to this file")
    p.add_argument("--scenario-in", help="replay a previously saved scenario file")
    return parser


def _apply_config(parser, argv):
    """Pre-scan for --config and fold its key = value pairs in as defaults."""
    if "--config" not in argv:
        return argv
    at = argv.index("--config")
    if at + 1 >= len(argv):
        raise UsageError("--config needs a file path")
    path = argv[at + 1]
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    injected = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno} is not 'key = value': {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        injected.extend([flag, value])
    # Injected pairs come first so explicit flags override them.
    return injected + argv


def _params_from_args(args) -> SystemParams:
    return SystemParams(args.lambda_j, args.lambda_e, args.gamma_c, args.gamma_e, args.p_jam, args.alpha)


def _spec_from_args(args) -> ExperimentSpec:
    rounds = getattr(args, "rounds", None)
    if rounds is None:
        rounds = PAPER_ROUNDS if getattr(args, "paper_scale", False) else DESK_ROUNDS
    return ExperimentSpec(
        kind=args.command,
        params=_params_from_args(args),
        seed=getattr(args, "seed", 0),
        rounds=rounds,
        threads=getattr(args, "threads", 1),
        lambda_j_grid=getattr(args, "lambda_j_grid", ()),
        lambda_e_grid=getattr(args, "lambda_e_grid", ()),
        beta_grid=getattr(args, "beta_grid", ()),
        distances=getattr(args, "distances", (3.0, 4.0, 5.0)),
        n_hops=getattr(args, "n_hops", 5),
        power=getattr(args, "power", 1.0),
        beta_so=getattr(args, "beta_so", 0.4),
        beta_co=getattr(args, "beta_co", 0.4),
        max_range=getattr(args, "max_range", 8.0),
        n_legit=getattr(args, "n_legit", 20),
        fixture=getattr(args, "fixture", "table2"),
    )


def _write_csv(out_path: str, header, rows) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buffer.getvalue()
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _run(args) -> int:
    command = args.command
    spec = _spec_from_args(args)
    if command == "validate-cop":
        header, rows = run_validate_cop(spec)
    elif command == "validate-sop":
        header, rows = run_validate_sop(spec)
    elif command == "tradeoff-curve":
        header, rows = run_tradeoff_curve(spec)
    elif command == "optimal-tradeoff":
        header, rows = run_optimal_tradeoff(spec)
    elif command == "table-fixture":
        header, rows = run_table_fixture(spec)
    elif command == "route-demo":
        scenario = load_scenario(args.scenario_in) if args.scenario_in else None
        header, rows, scenario, reachable = run_route_demo(spec, scenario)
        if args.scenario_out:
            save_scenario(scenario, args.scenario_out)
        _write_csv(args.out, header, rows)
        return EXIT_OK if reachable else EXIT_UNREACHABLE
    else:  # pragma: no cover - argparse enforces the choices
        raise UsageError(f"unknown command {command!r}")
    _write_csv(args.out, header, rows)
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv and not argv[0].startswith("-"):
            argv = argv[:1] + _apply_config(parser, argv[1:])
        args = parser.parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
