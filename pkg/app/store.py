"""Persist computed indicator reports and load them back."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass

from sqlalchemy.orm import Session

from app.indicators.config import IndicatorConfig, ZeroRPolicy
from app.indicators.export import provenance
from app.indicators.report import IndicatorReport, JournalIndicators
from app.models import IndicatorRun, JournalIndicator

logger = logging.getLogger(__name__)

_ROW_FIELDS = (
    "indexed",
    "paper_count",
    "citation_count",
    "rip",
    "subject_field_size",
    "cp",
    "rdcp",
    "snip",
    "fcc_total",
    "fcc_windowed",
    "zero_r_count",
    "zero_r_share",
    "nonzero_r_mean",
    "excluded_citations",
)


class RunNotFoundError(LookupError):
    pass


@dataclass
class RecordResult:
    run_id: int = 0
    created: bool = False
    inserted: int = 0
    updated: int = 0
    skipped: int = 0


def config_fingerprint(report: IndicatorReport) -> tuple[str, str]:
    data = provenance(report)
    data.pop("corpus_sha256", None)
    config_json = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return config_json, hashlib.sha256(config_json.encode("utf-8")).hexdigest()


def _reasons_json(row: JournalIndicators) -> str:
    return json.dumps(dict(sorted(row.reasons.items())), separators=(",", ":"))


def _update_row(stored: JournalIndicator, row: JournalIndicators) -> bool:
    changed = False
    for name in _ROW_FIELDS:
        value = getattr(row, name)
        if getattr(stored, name) != value:
            setattr(stored, name, value)
            changed = True
    reasons = _reasons_json(row)
    if stored.reasons_json != reasons:
        stored.reasons_json = reasons
        changed = True
    return changed


def _new_row(row: JournalIndicators) -> JournalIndicator:
    stored = JournalIndicator(journal_id=row.journal_id, reasons_json=_reasons_json(row))
    for name in _ROW_FIELDS:
        setattr(stored, name, getattr(row, name))
    return stored


def record_run(db: Session, report: IndicatorReport) -> RecordResult:
    """Insert the run, or update it when the same (corpus, config) pair was recorded before."""

    if not report.corpus_sha256:
        raise ValueError("report has no corpus hash; compute it before recording")
    config_json, config_sha256 = config_fingerprint(report)
    result = RecordResult()

    run = (
        db.query(IndicatorRun)
        .filter(
            IndicatorRun.corpus_sha256 == report.corpus_sha256,
            IndicatorRun.config_sha256 == config_sha256,
        )
        .one_or_none()
    )
    if run is None:
        run = IndicatorRun(corpus_sha256=report.corpus_sha256, config_sha256=config_sha256)
        db.add(run)
        result.created = True

    run.config_json = config_json
    run.census_year = report.config.census_year
    run.citation_window = report.config.citation_window
    run.field_window = report.config.field_window
    run.median_method = report.config.median_method
    run.zero_r_policy = report.zero_r_policy.value
    run.median_cp = report.median_cp
    run.median_cp_reason = report.median_cp_reason
    run.journal_count = len(report.journals)

    existing = {stored.journal_id: stored for stored in run.journals}
    for row in report.journals:
        stored = existing.get(row.journal_id)
        if stored is None:
            run.journals.append(_new_row(row))
            result.inserted += 1
        elif _update_row(stored, row):
            result.updated += 1
        else:
            result.skipped += 1

    db.commit()
    result.run_id = run.id
    logger.info(
        "Recorded run run_id=%s created=%s inserted=%s updated=%s skipped=%s",
        run.id,
        result.created,
        result.inserted,
        result.updated,
        result.skipped,
    )
    return result


def list_runs(db: Session) -> list[IndicatorRun]:
    return db.query(IndicatorRun).order_by(IndicatorRun.id).all()


def get_run(db: Session, run_id: int) -> IndicatorRun:
    run = db.get(IndicatorRun, run_id)
    if run is None:
        raise RunNotFoundError(f"Unknown run: {run_id}")
    return run


def load_run_report(db: Session, run_id: int) -> IndicatorReport:
    run = get_run(db, run_id)
    config = IndicatorConfig(
        census_year=run.census_year,
        citation_window=run.citation_window,
        field_window=run.field_window,
        median_method=run.median_method,
    )
    journals = tuple(
        JournalIndicators(
            journal_id=stored.journal_id,
            reasons=json.loads(stored.reasons_json or "{}"),
            **{name: getattr(stored, name) for name in _ROW_FIELDS},
        )
        for stored in run.journals
    )
    return IndicatorReport(
        config=config,
        zero_r_policy=ZeroRPolicy.parse(run.zero_r_policy),
        median_cp=run.median_cp,
        median_cp_reason=run.median_cp_reason,
        journals=journals,
        corpus_sha256=run.corpus_sha256,
    )
