"""Deterministic journal rankings and rank-change comparison across indicators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from app.indicators.report import IndicatorReport, JournalIndicators

RANK_KEYS = ("snip", "rip", "fcc_total", "fcc_windowed")
COMPARED_KEYS = ("rip", "fcc_total", "fcc_windowed")
SIGNIFICANT_DIGITS = 12


class UnknownRankKeyError(ValueError):
    pass


@dataclass(frozen=True)
class RankedJournal:
    rank: int
    journal_id: str
    value: float | None


@dataclass(frozen=True)
class ComparisonRow:
    journal_id: str
    values: dict[str, float | None]
    ranks: dict[str, int]
    zero_r_count: int
    zero_r_share: float | None
    rank_changes: tuple[str, ...]

    @property
    def flagged(self) -> bool:
        return bool(self.rank_changes)


def _check_key(key: str) -> str:
    if key not in RANK_KEYS:
        raise UnknownRankKeyError(f"Unknown rank key: {key} (expected one of {', '.join(RANK_KEYS)})")
    return key


def comparable(value: float | None) -> float | None:
    """Value rounded to 12 significant digits; float noise below that is a tie."""
    if value is None:
        return None
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def _sort_key(row: JournalIndicators, key: str) -> tuple[int, float, str]:
    value = comparable(row.value(key))
    if value is None:
        return 1, 0.0, row.journal_id
    return 0, -value, row.journal_id


def _ranked(rows: Iterable[JournalIndicators], key: str) -> list[RankedJournal]:
    ordered = sorted(rows, key=lambda row: _sort_key(row, key))
    ranked: list[RankedJournal] = []
    previous = None
    rank = 0
    for position, row in enumerate(ordered, start=1):
        marker = comparable(row.value(key))
        if position == 1 or marker != previous:
            rank = position
        previous = marker
        ranked.append(RankedJournal(rank=rank, journal_id=row.journal_id, value=row.value(key)))
    return ranked


def rank(report: IndicatorReport, key: str, top: int | None = None) -> list[RankedJournal]:
    """
    Journals by descending `key`, undefined values last, ties by journal_id.
    Tied journals share the rank of the first of them.
    """

    _check_key(key)
    if top is not None and top < 0:
        raise ValueError("top must be >= 0")
    ranked = _ranked(report.journals, key)
    return ranked if top is None else ranked[:top]


def compare(report: IndicatorReport) -> list[ComparisonRow]:
    positions = {
        key: {entry.journal_id: entry.rank for entry in _ranked(report.journals, key)} for key in RANK_KEYS
    }
    rows = []
    for journal in sorted(report.journals, key=lambda row: row.journal_id):
        ranks = {key: positions[key][journal.journal_id] for key in RANK_KEYS}
        rows.append(
            ComparisonRow(
                journal_id=journal.journal_id,
                values={key: journal.value(key) for key in RANK_KEYS},
                ranks=ranks,
                zero_r_count=journal.zero_r_count,
                zero_r_share=journal.zero_r_share,
                rank_changes=tuple(key for key in COMPARED_KEYS if ranks[key] != ranks["snip"]),
            )
        )
    return rows
