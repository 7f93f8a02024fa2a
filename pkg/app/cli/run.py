"""CLI entrypoint: python -m app.cli.run <command> ..."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from app.cli.commands import (
    EXIT_INVALID,
    EXIT_IO,
    cmd_compare,
    cmd_compute,
    cmd_rank,
    cmd_simulate,
    cmd_validate,
)
from app.cli.config import KEYS, RunConfig
from app.indicators.ranking import RANK_KEYS
from app.settings import get_settings

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the validation status instead of argparse's 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INVALID)


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="INI file with a [run] section; flags override it.")
    parser.add_argument("--journals", type=Path, help="journals.csv")
    parser.add_argument("--documents", type=Path, help="documents.csv")
    parser.add_argument("--references", type=Path, help="references.csv")
    parser.add_argument("--corpus-dir", dest="corpus_dir", type=Path, help="Directory holding the three CSV files.")
    parser.add_argument("--jsonl", type=Path, help="Single JSON-lines corpus file.")


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("table", "json"), default=None, help="Output format (default table).")
    parser.add_argument("--out", type=Path, help="Write output here instead of stdout.")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="python -m app.cli.run",
        description="Journal impact indicators: SNIP, fractional counting and synthetic benchmarks.",
    )
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    validate = commands.add_parser("validate", help="Check corpus invariants; list violations.")
    _add_corpus_args(validate)

    compute = commands.add_parser("compute", help="Compute the indicator report.")
    _add_corpus_args(compute)
    compute.add_argument("--census-year", dest="census_year", type=int)
    compute.add_argument("--citation-window", dest="citation_window", type=int, help="Default 3.")
    compute.add_argument("--field-window", dest="field_window", type=int, help="Default 10.")
    compute.add_argument("--zero-r-policy", dest="zero_r_policy", choices=("exclude", "undefined"))
    compute.add_argument("--record", action="store_true", help="Also store the run in the database.")
    _add_output_args(compute)

    rank = commands.add_parser("rank", help="Order journals of a report by one indicator.")
    rank.add_argument("report", type=Path)
    rank.add_argument("--key", choices=RANK_KEYS, default="snip")
    rank.add_argument("--top", type=int, default=None)
    _add_output_args(rank)

    simulate = commands.add_parser("simulate", help="Write a synthetic benchmark corpus.")
    simulate.add_argument("benchmark")
    simulate.add_argument("parameters", nargs="*", help="Positional values or name=value pairs.")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--out", type=Path, required=True, help="Output directory.")

    compare = commands.add_parser("compare", help="Side-by-side SNIP and FCC rank positions.")
    compare.add_argument("report", type=Path)
    _add_output_args(compare)

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    overrides = {key: getattr(args, key, None) for key in KEYS}
    if args.config is not None:
        return RunConfig.from_ini(args.config, overrides)
    return RunConfig.build(overrides)


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "validate":
        return cmd_validate(_run_config(args))
    if args.command == "compute":
        return cmd_compute(_run_config(args), record=args.record)
    if args.command == "rank":
        if args.top is not None and args.top < 0:
            raise ValueError("--top must be >= 0")
        return cmd_rank(args.report, args.key, args.top, args.format or "table", args.out)
    if args.command == "simulate":
        return cmd_simulate(args.benchmark, args.parameters, args.seed, args.out)
    return cmd_compare(args.report, args.format or "table", args.out)


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else getattr(logging, get_settings().log_level, logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )

    try:
        return _dispatch(args)
    except (OSError, UnicodeDecodeError) as exc:
        logger.error("I/O error command=%s error=%s", args.command, exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except (ValidationError, ValueError, LookupError) as exc:
        logger.error("Rejected command=%s error=%s", args.command, exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except Exception:
        logger.exception("Unexpected failure command=%s", args.command)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
