"""
Command-Line Interface
======================

``tropmod <command> [options]``. Artifacts are written to stdout (or to
``--output``); logs go to stderr. Exit codes: 0 success, 1 user error,
2 failed internal invariant.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger

from . import __version__
from .runner.command_runner import Command, CommandRunner, OutputFormat, RunConfig
from .utils.errors import TropmodError
from .utils.log_setup import configure_logging
from .utils.settings import load_settings


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="YAML file with run options; flags override it")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], help="artifact format")
    parser.add_argument("--output", type=Path, help="write the artifact to this file instead of stdout")
    parser.add_argument("--workers", type=int, help="worker processes (default TROPMOD_WORKERS or 1)")
    parser.add_argument("--log-level", help="stderr log level (default TROPMOD_LOG_LEVEL or INFO)")
    parser.add_argument("--log-file", type=Path, help="also log to this rotating file")


def _add_census(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--genus", type=int, help="genus g")
    parser.add_argument("--leaves", type=int, help="number of labeled leaves n")


def _add_float(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--float", dest="float_mode", action="store_true", default=None,
                        help="accept float lengths and compare within a tolerance")
    parser.add_argument("--tolerance", type=float, help="float-mode tolerance in turns")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropmod",
        description="Tropicalizations of pointed Riemann surfaces: graphs, strata and nodal types.",
    )
    parser.add_argument("--version", action="version", version=f"tropmod {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    for name, help_text in ((Command.GEN_REGULAR, "enumerate regular tropicalizations of type (g, n)"),
                            (Command.GEN_STABLE, "enumerate stable weighted graphs of type (g, n)")):
        cmd = sub.add_parser(name.value, help=help_text)
        _add_census(cmd)
        cmd.add_argument("--store", action="store_true", default=None, help="persist the census in the data directory")
        _add_common(cmd)

    cmd = sub.add_parser(Command.CONTRACT.value, help="weighted contraction with its witness maps")
    cmd.add_argument("--graph", help="graph file or builtin name (theta, dumbbell, vertex:<w>[:<n>])")
    cmd.add_argument("--edges", help="comma-separated edge ids to contract")
    _add_common(cmd)

    cmd = sub.add_parser(Command.AUT.value, help="automorphism group of a graph")
    cmd.add_argument("--graph", help="graph file or builtin name")
    _add_common(cmd)

    cmd = sub.add_parser(Command.STRATA.value, help="strata poset over a base graph")
    cmd.add_argument("--graph", help="graph file or builtin name")
    cmd.add_argument("--dot", type=Path, help="also write the Hasse diagram as DOT")
    cmd.add_argument("--json", dest="json_out", type=Path, help="also write the poset as JSON")
    cmd.add_argument("--store", action="store_true", default=None, help="persist the strata in the data directory")
    _add_common(cmd)

    for name, help_text in ((Command.CLASSIFY_POINT, "stratum of a point of the compactified cone"),
                            (Command.FIBER, "all points identified with a point")):
        cmd = sub.add_parser(name.value, help=help_text)
        cmd.add_argument("--point", help="point file")
        _add_float(cmd)
        _add_common(cmd)

    cmd = sub.add_parser(Command.DIST.value, help="product distance and fiber separation of two points")
    cmd.add_argument("--p", help="first point file")
    cmd.add_argument("--q", help="second point file")
    _add_float(cmd)
    _add_common(cmd)

    cmd = sub.add_parser(Command.COMPARE.value, help="coverage of stable classes by the strata of each regular base")
    _add_census(cmd)
    cmd.add_argument("--csv", type=Path, help="also write the coverage table as CSV")
    cmd.add_argument("--dot", type=Path, help="also write the stratum-to-nodal-class maps as DOT")
    _add_common(cmd)

    cmd = sub.add_parser(Command.REPORT.value, help="census report (Markdown or PDF)")
    _add_census(cmd)
    _add_common(cmd)
    return parser


RUN_KEYS = ("command", "graph", "point", "p", "q", "edges", "genus", "leaves", "format", "float_mode",
            "tolerance", "workers", "output", "dot", "json_out", "csv", "store")


def _run_values(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: getattr(args, key) for key in RUN_KEYS if getattr(args, key, None) is not None}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and return its exit code.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1

    try:
        settings = load_settings()
        configure_logging(args.log_level or settings.log_level, args.log_file or settings.log_file)
        config = RunConfig.from_sources(_run_values(args), args.config)
    except TropmodError as e:
        print(f"tropmod: error: {e.one_line()}", file=sys.stderr)
        return e.exit_code

    outcome = CommandRunner(settings).run(config)
    if outcome.output:
        sys.stdout.write(outcome.output)
        sys.stdout.flush()
    if outcome.error:
        print(f"tropmod: error: {outcome.error}", file=sys.stderr)
    logger.debug(f"{config.command.value} finished with exit code {outcome.exit_code}")
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
