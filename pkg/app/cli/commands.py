"""Subcommand implementations. Each returns a process exit status."""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence, TextIO

from app.cli.config import RunConfig
from app.corpus.validate import validate
from app.indicators.export import read_report, render
from app.indicators.ranking import RANK_KEYS, compare, rank
from app.indicators.report import IndicatorReport, compute_all
from app.synth.benchmarks import write_benchmark

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(text: str, out: Path | None, stdout: TextIO | None) -> None:
    if out is None:
        (stdout or sys.stdout).write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info("Wrote output path=%s bytes=%s", out, len(text.encode("utf-8")))


def cmd_validate(run_config: RunConfig, stdout: TextIO | None = None) -> int:
    corpus = run_config.read_corpus()
    violations = validate(corpus)
    for violation in violations:
        (stdout or sys.stdout).write(f"{violation}\n")
    logger.info(
        "Validated corpus documents=%s references=%s violations=%s",
        corpus.document_count,
        corpus.reference_count,
        len(violations),
    )
    return EXIT_INVALID if violations else EXIT_OK


def compute_report(run_config: RunConfig) -> IndicatorReport:
    """Indicator report with provenance; config errors surface before the corpus is read."""
    config = run_config.indicator_config()
    corpus = run_config.load_corpus()
    report = compute_all(corpus, config, run_config.zero_r_policy)
    return replace(report, corpus_sha256=corpus.content_hash())


def cmd_compute(
    run_config: RunConfig,
    record: bool = False,
    stdout: TextIO | None = None,
    session_factory=None,
) -> int:
    report = compute_report(run_config)
    _emit(render(report, run_config.format), run_config.out, stdout)
    if record:
        # Imported here so commands that never record do not create the database.
        from app.db import Base, SessionLocal, engine
        from app.store import record_run

        if session_factory is None:
            Base.metadata.create_all(bind=engine)
            session_factory = SessionLocal
        with session_factory() as db:
            record_run(db, report)
    return EXIT_OK


def cmd_rank(
    report_path: str | Path,
    key: str,
    top: int | None = None,
    fmt: str = "table",
    out: Path | None = None,
    stdout: TextIO | None = None,
) -> int:
    ranked = rank(read_report(report_path), key, top)
    if fmt == "json":
        payload = [{"rank": entry.rank, "journal_id": entry.journal_id, key: entry.value} for entry in ranked]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["rank", "journal_id", key])
        for entry in ranked:
            writer.writerow([entry.rank, entry.journal_id, _cell(entry.value)])
        text = buffer.getvalue()
    _emit(text, out, stdout)
    return EXIT_OK


def cmd_simulate(
    benchmark: str,
    parameters: Sequence[str],
    seed: int,
    out_dir: str | Path,
    stdout: TextIO | None = None,
) -> int:
    for path in write_benchmark(benchmark, parameters, seed, out_dir):
        (stdout or sys.stdout).write(f"{path}\n")
    return EXIT_OK


def cmd_compare(
    report_path: str | Path,
    fmt: str = "table",
    out: Path | None = None,
    stdout: TextIO | None = None,
) -> int:
    rows = compare(read_report(report_path))
    if fmt == "json":
        payload = [
            {
                "journal_id": row.journal_id,
                "values": row.values,
                "ranks": row.ranks,
                "zero_r_count": row.zero_r_count,
                "zero_r_share": row.zero_r_share,
                "rank_changes": list(row.rank_changes),
            }
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            ["journal_id", *RANK_KEYS, *(f"{key}_rank" for key in RANK_KEYS), "zero_r_count", "zero_r_share", "rank_changes"]
        )
        for row in rows:
            writer.writerow(
                [
                    row.journal_id,
                    *(_cell(row.values[key]) for key in RANK_KEYS),
                    *(row.ranks[key] for key in RANK_KEYS),
                    row.zero_r_count,
                    _cell(row.zero_r_share),
                    ";".join(row.rank_changes),
                ]
            )
        text = buffer.getvalue()
    flagged = sum(1 for row in rows if row.flagged)
    logger.info("Compared report journals=%s flagged=%s", len(rows), flagged)
    _emit(text, out, stdout)
    return EXIT_OK
