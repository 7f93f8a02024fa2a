from __future__ import annotations

import logging
from dataclasses import asdict

from fastapi import Depends, FastAPI, HTTPException, Query
from sqlalchemy.orm import Session

from app.db import Base, engine, get_db
from app.indicators.ranking import UnknownRankKeyError, compare, rank
from app.schemas import (
    ComparisonOut,
    ComparisonRowOut,
    JournalIndicatorOut,
    RankedJournalOut,
    RankingOut,
    RunDetailOut,
    RunOut,
)
from app.store import RunNotFoundError, get_run, list_runs, load_run_report

app = FastAPI(title="Journal Impact Runs")
logger = logging.getLogger(__name__)


@app.on_event("startup")
def _create_tables() -> None:
    Base.metadata.create_all(bind=engine)


def _report_or_404(db: Session, run_id: int):
    try:
        return load_run_report(db, run_id)
    except RunNotFoundError:
        raise HTTPException(status_code=404, detail=f"Run {run_id} not found") from None


@app.get("/health")
def health():
    return {"status": "ok"}


@app.get("/runs", response_model=list[RunOut])
def runs(db: Session = Depends(get_db)):
    return [RunOut.model_validate(run) for run in list_runs(db)]


@app.get("/runs/{run_id}", response_model=RunDetailOut)
def run_detail(run_id: int, db: Session = Depends(get_db)):
    report = _report_or_404(db, run_id)
    run = get_run(db, run_id)
    return RunDetailOut(
        run=RunOut.model_validate(run),
        journals=[JournalIndicatorOut(**asdict(row)) for row in report.journals],
    )


@app.get("/runs/{run_id}/rank", response_model=RankingOut)
def run_rank(
    run_id: int,
    key: str = Query("snip"),
    top: int | None = Query(None, ge=0),
    db: Session = Depends(get_db),
):
    report = _report_or_404(db, run_id)
    try:
        ranked = rank(report, key, top)
    except UnknownRankKeyError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    logger.info("Ranked run run_id=%s key=%s top=%s", run_id, key, top)
    return RankingOut(
        run_id=run_id,
        key=key,
        journals=[RankedJournalOut(**asdict(entry)) for entry in ranked],
    )


@app.get("/runs/{run_id}/compare", response_model=ComparisonOut)
def run_compare(run_id: int, db: Session = Depends(get_db)):
    report = _report_or_404(db, run_id)
    rows = [
        ComparisonRowOut(
            journal_id=row.journal_id,
            values=row.values,
            ranks=row.ranks,
            zero_r_count=row.zero_r_count,
            zero_r_share=row.zero_r_share,
            rank_changes=list(row.rank_changes),
        )
        for row in compare(report)
    ]
    return ComparisonOut(run_id=run_id, journals=rows)
