"""SNIP pipeline: raw impact, subject field, citation potential and normalization."""

from __future__ import annotations

import numpy as np

from app.corpus.store import Corpus
from app.indicators.census import CensusView, census_view
from app.indicators.config import IndicatorConfig

NO_WINDOW_PAPERS = "no_window_papers"
EMPTY_SUBJECT_FIELD = "empty_subject_field"
ZERO_CITATION_POTENTIAL = "zero_citation_potential"
UNDEFINED_CITATION_POTENTIAL = "undefined_citation_potential"
UNDEFINED_MEDIAN = "undefined_median"
ZERO_MEDIAN = "zero_median"
UNDEFINED_RIP = "undefined_rip"
UNDEFINED_RDCP = "undefined_rdcp"


def rip_from_view(view: CensusView, journal_pos: int) -> float | None:
    papers = int(view.paper_count[journal_pos])
    if papers == 0:
        return None
    return int(view.citation_count[journal_pos]) / papers


def raw_impact_per_paper(corpus: Corpus, journal_id: str, config: IndicatorConfig) -> float | None:
    """Census-year citations to the journal's window papers, per window paper."""
    journal_pos = corpus.journal_position(journal_id)
    return rip_from_view(census_view(corpus, config), journal_pos)


def subject_field(corpus: Corpus, journal_id: str, config: IndicatorConfig) -> frozenset[str]:
    """
    Citable census-year documents citing at least one citable paper of the
    journal published 1..field_window years before the census year.
    """
    journal_pos = corpus.journal_position(journal_id)
    members = census_view(corpus, config).members(journal_pos)
    return frozenset(corpus.doc_ids[pos] for pos in members.tolist())


def citation_potential(corpus: Corpus, journal_id: str, config: IndicatorConfig) -> float | None:
    """Mean r over the subject field, zero-r members included."""
    journal_pos = corpus.journal_position(journal_id)
    return census_view(corpus, config).citation_potential(journal_pos)


def midpoint_median(values: np.ndarray) -> float | None:
    if values.size == 0:
        return None
    ordered = np.sort(values)
    mid = ordered.size // 2
    if ordered.size % 2:
        return float(ordered[mid])
    return float((ordered[mid - 1] + ordered[mid]) / 2)


def median_from_view(corpus: Corpus, view: CensusView) -> float | None:
    eligible = corpus.journal_indexed & (view.field_size > 0)
    positions = np.flatnonzero(eligible)
    values = np.array(
        [int(view.field_r_sum[j]) / int(view.field_size[j]) for j in positions.tolist()],
        dtype=np.float64,
    )
    return midpoint_median(values)


def median_citation_potential(corpus: Corpus, config: IndicatorConfig) -> float | None:
    """Median CP over indexed journals with a defined CP."""
    return median_from_view(corpus, census_view(corpus, config))


def rdcp_reason(cp: float | None, median_cp: float | None) -> str | None:
    """Reason code for an undefined RDCP, or None when RDCP is defined."""
    if cp is None:
        return UNDEFINED_CITATION_POTENTIAL
    if median_cp is None:
        return UNDEFINED_MEDIAN
    if median_cp == 0:
        return ZERO_MEDIAN
    if cp == 0:
        return ZERO_CITATION_POTENTIAL
    return None


def relative_citation_potential(cp: float | None, median_cp: float | None) -> float | None:
    if rdcp_reason(cp, median_cp) is not None:
        return None
    return cp / median_cp


def snip(rip: float | None, rdcp: float | None) -> float | None:
    if rip is None or rdcp is None or rdcp <= 0:
        return None
    return rip / rdcp
