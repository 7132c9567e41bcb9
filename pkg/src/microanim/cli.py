"""Command-line front-end: run or inspect scenario files.

Exit codes: 0 success, 1 usage or parse failure, 2 inspect error,
3 ran out of time, 4 runtime stepping error.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO

from .analysis import InspectError, duration, max_duration
from .document import DocumentError
from .dsl import KindMismatch
from .engine import run_fps, trace_lines
from .engine import CustomOpContractError, NegativeDelta
from .schedule import SchedulingError
from .script import ParseError, Scenario, load_scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INSPECT = 2
EXIT_OUT_OF_TIME = 3
EXIT_RUNTIME = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; this tool reserves 2 for inspect errors
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="microanim", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario and emit a frame trace")
    run_p.add_argument("scenario", help="scenario JSON file")
    run_p.add_argument("--fps", type=float, default=60.0, help="frames per second (default 60)")
    run_p.add_argument(
        "--max-time", type=float, default=60.0, help="give up after this many seconds (default 60)"
    )
    run_p.add_argument("--out", default="-", help="trace output path, - for stdout (default)")

    inspect_p = sub.add_parser("inspect", help="report a scenario's duration without running it")
    inspect_p.add_argument("scenario", help="scenario JSON file")
    inspect_p.add_argument(
        "--mode", choices=("duration", "max"), required=True, help="exact or maximum duration"
    )
    return parser


def cmd_run(scenario: Scenario, fps: float, max_time: float, out: IO[str]) -> int:
    try:
        trace = run_fps(scenario.animation, scenario.state, fps, max_time)
    except (DocumentError, NegativeDelta, CustomOpContractError, KindMismatch) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for line in trace_lines(trace):
        print(line, file=out)
    return EXIT_OK if trace.completed else EXIT_OUT_OF_TIME


def cmd_inspect(scenario: Scenario, mode: str) -> int:
    try:
        if mode == "duration":
            print(f"duration: {duration(scenario.animation)}")
        else:
            print(f"maxDuration: {max_duration(scenario.animation)}")
    except InspectError as exc:
        print(f"not inspectable: {exc}")
        return EXIT_INSPECT
    return EXIT_OK


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        with open(args.scenario, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        print(f"cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        scenario = load_scenario(data)
    except (ParseError, KindMismatch, ValueError) as exc:
        print(f"bad scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InspectError as exc:
        print(f"not inspectable: {exc}", file=sys.stderr)
        return EXIT_INSPECT
    except SchedulingError as exc:
        print(f"bad schedule: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "inspect":
        return cmd_inspect(scenario, args.mode)

    if args.out == "-":
        return cmd_run(scenario, args.fps, args.max_time, sys.stdout)
    with open(args.out, "w", encoding="utf-8") as out:
        return cmd_run(scenario, args.fps, args.max_time, out)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
