"""Command-line front end.

Subcommands:
  run        simulate a scenario JSON file
  demo       simulate one of the built-in cases (1, 2, 3)
  summarize  aggregate a previously written trace CSV

Exit codes mirror the run outcome: 0 GoalReached, 2 Collided, 3 Timeout,
and 1 for any input problem (bad arguments, unreadable files, invalid
scenario documents).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import replace

from .costmap import inflate, write_pgm
from .report import format_summary, read_trace, summarize, write_trace
from .scenario import Scenario, ScenarioError, builtin_scenario, load_scenario
from .sim import RunStatus, simulate

_STATUS_EXIT = {
    RunStatus.GOAL_REACHED: 0,
    RunStatus.COLLIDED: 2,
    RunStatus.TIMEOUT: 3,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this surface reserves 2 for
    collision outcomes, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="dwanav",
        description="Dynamic-window obstacle avoidance simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", help="simulate a scenario JSON file")
    p_run.add_argument("--scenario", required=True, help="path to a scenario document")
    p_run.add_argument("--trace", help="write the trace CSV here")
    p_run.add_argument("--grid-dump", help="write the final costmap as ASCII PGM here")
    p_run.add_argument("--seed", type=int, help="override the scenario's RNG seed")

    p_demo = sub.add_parser("demo", help="simulate a built-in case")
    p_demo.add_argument("--case", type=int, choices=(1, 2, 3), required=True)
    p_demo.add_argument("--trace", help="write the trace CSV here")

    p_sum = sub.add_parser("summarize", help="aggregate a trace CSV")
    p_sum.add_argument("--trace", required=True, help="path to a trace CSV")
    return parser


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".dwanav-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _read_file(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _execute(scenario: Scenario, trace_path, grid_path=None) -> int:
    result = simulate(scenario)
    if trace_path:
        _atomic_write(trace_path, write_trace(result.records))
    if grid_path and result.final_grid is not None:
        grid = inflate(result.final_grid, scenario.map.inflation_radius)
        _atomic_write(grid_path, write_pgm(grid))
    print(format_summary(summarize(result.records)))
    return _STATUS_EXIT[result.status]


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            scenario = load_scenario(_read_file(args.scenario))
            if args.seed is not None:
                scenario = replace(scenario, sim=replace(scenario.sim, seed=args.seed))
            return _execute(scenario, args.trace, args.grid_dump)
        if args.command == "demo":
            return _execute(builtin_scenario(args.case), args.trace)
        summary = summarize(read_trace(_read_file(args.trace)))
        print(format_summary(summary))
        return _STATUS_EXIT.get(summary.status, 0)
    except (OSError, ScenarioError, ValueError) as exc:
        print(f"dwanav: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
