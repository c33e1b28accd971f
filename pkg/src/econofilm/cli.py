"""Command-line entry point.

    econofilm <subcommand> --scenario <path> [--offsets a,b,c] [--out <path>]
              [--pretty] [--filter-negative-value]

CSV goes to stdout (or --out); stderr carries only messages. Exit statuses:
0 success, 1 usage error, 2 scenario validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (InvalidInputError, NumericalError, OutOfRangeError,
                     ScenarioError)
from .scenario import SUBCOMMANDS, load_scenario, run_subcommand

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _offsets_argument(text: str):
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"offsets must be comma-separated numbers, got '{text}'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="econofilm",
                     description="Deposition-model scenario runner")
    commands = parser.add_subparsers(dest="command", required=True,
                                     parser_class=_Parser)
    for name in SUBCOMMANDS:
        sub = commands.add_parser(name)
        sub.add_argument("--scenario", required=True,
                         help="path to a scenario JSON file")
        sub.add_argument("--out", help="write CSV here instead of stdout")
        sub.add_argument("--pretty", action="store_true",
                         help="print a 6-digit plain-text table to stdout")
        if name == "profile":
            sub.add_argument("--offsets", required=True,
                             type=_offsets_argument,
                             help="comma-separated lateral offsets in cm")
        if name == "fdi-rank":
            sub.add_argument("--filter-negative-value", action="store_true",
                             help="drop loss-making locations from the ranking")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
        table = run_subcommand(args.command, scenario,
                               offsets=getattr(args, "offsets", None),
                               filter_negative=getattr(
                                   args, "filter_negative_value", False))
    except OSError as exc:
        print(f"econofilm: error: cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"econofilm: scenario error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InvalidInputError, OutOfRangeError, NumericalError) as exc:
        print(f"econofilm: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    csv_text = table.to_csv()
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(csv_text)
        except OSError as exc:
            print(f"econofilm: error: cannot write output: {exc}",
                  file=sys.stderr)
            return EXIT_USAGE
        if args.pretty:
            sys.stdout.write(table.to_pretty())
    elif args.pretty:
        sys.stdout.write(table.to_pretty())
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK
