"""Command-line entry point: ``agentheat {run,validate,scenarios}``.

Exit codes: 0 success, 1 usage or validation error, 2 non-finite final field.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import engine
from .output import DirectorySink
from .scenario import (
    BUILTINS,
    ScenarioError,
    builtin,
    load_scenario,
    validate,
    with_overrides,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BLOWUP = 2


def _pgm_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <lo>:<hi>, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"need lo < hi, got {text!r}")
    return lo, hi


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for numerical blow-up here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="agentheat",
        description="Agent-lattice simulation of 2D heat conduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser(
        "run",
        help="run a scenario file or built-in experiment",
        description="Run a scenario. Command-line overrides take precedence over "
                    "values in the scenario file.",
    )
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", metavar="PATH", help="scenario JSON file")
    src.add_argument("--builtin", metavar="NAME", help="built-in scenario (see 'scenarios')")
    run.add_argument("--out", default="out", metavar="DIR", help="output directory (default: out)")
    run.add_argument("--steps", type=_nonneg_int, help="override the step count")
    run.add_argument("--dt", type=float, help="override the time step, seconds")
    run.add_argument("--snapshot-every", type=_positive_int, metavar="N",
                     help="override the snapshot interval, in steps")
    run.add_argument("--workers", type=_positive_int, default=1, help="worker threads (default: 1)")
    run.add_argument("--csv", action=argparse.BooleanOptionalAction, default=None,
                     help="write CSV snapshots (overrides the scenario)")
    run.add_argument("--pgm", type=_pgm_range, metavar="LO:HI",
                     help="also write PGM snapshots with this temperature range")

    val = sub.add_parser("validate", help="check a scenario file")
    val.add_argument("path")

    sub.add_parser("scenarios", help="list built-in scenarios")
    return parser


def _load(args):
    if args.builtin is not None:
        return builtin(args.builtin)
    return load_scenario(args.scenario)


def cmd_run(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        scenario = _load(args)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=err)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: cannot read {args.scenario}: {exc.strerror}", file=err)
        return EXIT_ERROR
    except ScenarioError as exc:
        for d in exc.diagnostics:
            print(d, file=err)
        return EXIT_ERROR
    name = scenario.name
    if args.scenario is not None and name == "scenario":
        name = Path(args.scenario).stem
    scenario = with_overrides(
        scenario, steps=args.steps, dt=args.dt, snapshot_every=args.snapshot_every,
        csv=args.csv, pgm=args.pgm,
    )

    diags = validate(scenario)
    for d in diags:
        print(d, file=err)
    if any(d.level == "error" for d in diags):
        return EXIT_ERROR

    state = engine.init_state(scenario, workers=args.workers)
    plan = scenario.output
    try:
        with DirectorySink(args.out, name, [p.name for p in plan.probes],
                           csv=plan.csv, pgm=plan.pgm) as sink:
            engine.run(state, scenario.steps, [sink])
    except (engine.SinkError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR

    diag = engine.diagnostics(state)
    print(diag.summary(), file=out)
    return EXIT_OK if diag.finite else EXIT_BLOWUP


def cmd_validate(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        scenario = load_scenario(args.path)
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc.strerror}", file=err)
        return EXIT_ERROR
    except ScenarioError as exc:
        for d in exc.diagnostics:
            print(d, file=out)
        return EXIT_ERROR
    diags = validate(scenario)
    for d in diags:
        print(d, file=out)
    if any(d.level == "error" for d in diags):
        return EXIT_ERROR
    if not diags:
        print("ok", file=out)
    return EXIT_OK


def cmd_scenarios(args=None, out=None) -> int:
    out = out or sys.stdout
    width = max(len(n) for n in BUILTINS)
    for name, (_, description) in BUILTINS.items():
        print(f"{name:<{width}}  {description}", file=out)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "validate":
        return cmd_validate(args)
    return cmd_scenarios(args)


if __name__ == "__main__":
    sys.exit(main())
