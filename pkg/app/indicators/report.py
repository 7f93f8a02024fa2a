"""Combined per-journal indicator report."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from app.corpus.store import Corpus
from app.indicators.census import census_view
from app.indicators.config import IndicatorConfig, ZeroRPolicy
from app.indicators.fractional import (
    diagnostics_from_view,
    fcc_total_from_view,
    fcc_windowed_from_view,
    fcc_windowed_reason,
    zero_r_share_reason,
)
from app.indicators.snip import (
    EMPTY_SUBJECT_FIELD,
    NO_WINDOW_PAPERS,
    UNDEFINED_MEDIAN,
    UNDEFINED_RDCP,
    UNDEFINED_RIP,
    median_from_view,
    rip_from_view,
    rdcp_reason,
    relative_citation_potential,
    snip,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JournalIndicators:
    journal_id: str
    indexed: bool
    paper_count: int
    citation_count: int
    rip: float | None
    subject_field_size: int
    cp: float | None
    rdcp: float | None
    snip: float | None
    fcc_total: float | None
    fcc_windowed: float | None
    zero_r_count: int
    zero_r_share: float | None
    nonzero_r_mean: float | None = None
    excluded_citations: int = 0
    reasons: dict[str, str] = field(default_factory=dict)

    def value(self, key: str) -> float | None:
        return getattr(self, key)


@dataclass(frozen=True)
class IndicatorReport:
    config: IndicatorConfig
    zero_r_policy: ZeroRPolicy
    median_cp: float | None
    median_cp_reason: str | None
    journals: tuple[JournalIndicators, ...]
    corpus_sha256: str | None = None

    def row(self, journal_id: str) -> JournalIndicators:
        for row in self.journals:
            if row.journal_id == journal_id:
                return row
        raise KeyError(journal_id)


def _reasons(**candidates: str | None) -> dict[str, str]:
    return {name: reason for name, reason in candidates.items() if reason is not None}


def compute_all(
    corpus: Corpus,
    config: IndicatorConfig,
    policy: ZeroRPolicy | str = ZeroRPolicy.EXCLUDE,
) -> IndicatorReport:
    """Every indicator for every journal; rows ordered by journal_id."""

    started = time.perf_counter()
    policy = ZeroRPolicy.parse(policy)
    view = census_view(corpus, config)
    median_cp = median_from_view(corpus, view)

    rows: list[JournalIndicators] = []
    for journal_pos in sorted(range(corpus.journal_count), key=corpus.journal_ids.__getitem__):
        rip = rip_from_view(view, journal_pos)
        cp = view.citation_potential(journal_pos)
        rdcp = relative_citation_potential(cp, median_cp)
        snip_value = snip(rip, rdcp)
        diagnostics = diagnostics_from_view(view, journal_pos)
        no_papers = NO_WINDOW_PAPERS if rip is None else None
        rows.append(
            JournalIndicators(
                journal_id=corpus.journal_ids[journal_pos],
                indexed=bool(corpus.journal_indexed[journal_pos]),
                paper_count=int(view.paper_count[journal_pos]),
                citation_count=int(view.citation_count[journal_pos]),
                rip=rip,
                subject_field_size=int(view.field_size[journal_pos]),
                cp=cp,
                rdcp=rdcp,
                snip=snip_value,
                fcc_total=fcc_total_from_view(view, journal_pos),
                fcc_windowed=fcc_windowed_from_view(view, journal_pos, policy),
                zero_r_count=diagnostics.zero_r_count,
                zero_r_share=diagnostics.zero_r_share,
                nonzero_r_mean=diagnostics.nonzero_r_mean,
                excluded_citations=diagnostics.excluded_citations,
                reasons=_reasons(
                    rip=no_papers,
                    cp=EMPTY_SUBJECT_FIELD if cp is None else None,
                    rdcp=rdcp_reason(cp, median_cp),
                    snip=None if snip_value is not None else (UNDEFINED_RIP if rip is None else UNDEFINED_RDCP),
                    fcc_total=no_papers,
                    fcc_windowed=fcc_windowed_reason(view, journal_pos, policy),
                    zero_r_share=zero_r_share_reason(diagnostics),
                ),
            )
        )

    logger.debug(
        "Computed indicators journals=%s policy=%s elapsed=%.3fs",
        len(rows),
        policy.value,
        time.perf_counter() - started,
    )
    return IndicatorReport(
        config=config,
        zero_r_policy=policy,
        median_cp=median_cp,
        median_cp_reason=UNDEFINED_MEDIAN if median_cp is None else None,
        journals=tuple(rows),
    )
