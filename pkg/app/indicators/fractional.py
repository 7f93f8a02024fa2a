"""Fractional citation counting (1/n and 1/r weights) and zero-r diagnostics."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from app.corpus.store import Corpus
from app.indicators.census import CensusView, census_view
from app.indicators.config import IndicatorConfig, ZeroRPolicy
from app.indicators.snip import EMPTY_SUBJECT_FIELD, NO_WINDOW_PAPERS

ZERO_R_MEMBER = "zero_r_member"
UNRESOLVED_KEY = "unresolved"


@dataclass(frozen=True)
class ZeroRDiagnostics:
    zero_r_count: int
    zero_r_share: float | None
    nonzero_r_mean: float | None
    excluded_citations: int


def fcc_total_from_view(view: CensusView, journal_pos: int) -> float | None:
    papers = int(view.paper_count[journal_pos])
    if papers == 0:
        return None
    return float(view.fcc_total_sum[journal_pos]) / papers


def fcc_windowed_reason(view: CensusView, journal_pos: int, policy: ZeroRPolicy) -> str | None:
    if int(view.paper_count[journal_pos]) == 0:
        return NO_WINDOW_PAPERS
    if policy is ZeroRPolicy.UNDEFINED_ON_ANY_ZERO and int(view.zero_r_count[journal_pos]) > 0:
        return ZERO_R_MEMBER
    return None


def fcc_windowed_from_view(view: CensusView, journal_pos: int, policy: ZeroRPolicy) -> float | None:
    if fcc_windowed_reason(view, journal_pos, policy) is not None:
        return None
    return float(view.fcc_windowed_sum[journal_pos]) / int(view.paper_count[journal_pos])


def diagnostics_from_view(view: CensusView, journal_pos: int) -> ZeroRDiagnostics:
    size = int(view.field_size[journal_pos])
    zero = int(view.zero_r_count[journal_pos])
    nonzero = size - zero
    return ZeroRDiagnostics(
        zero_r_count=zero,
        zero_r_share=zero / size if size else None,
        nonzero_r_mean=int(view.field_r_sum[journal_pos]) / nonzero if nonzero else None,
        excluded_citations=int(view.excluded_citations[journal_pos]),
    )


def fcc_impact_total(corpus: Corpus, journal_id: str, config: IndicatorConfig) -> float | None:
    """Qualifying citations weighted 1/n of the citing document, per window paper."""
    journal_pos = corpus.journal_position(journal_id)
    return fcc_total_from_view(census_view(corpus, config), journal_pos)


def fcc_impact_windowed(
    corpus: Corpus,
    journal_id: str,
    config: IndicatorConfig,
    policy: ZeroRPolicy = ZeroRPolicy.EXCLUDE,
) -> float | None:
    """
    Qualifying citations weighted 1/r of the citing document, per window paper.

    Under EXCLUDE, citations from documents with r = 0 add nothing (they are
    counted in `zero_r_diagnostics().excluded_citations`). Under
    UNDEFINED_ON_ANY_ZERO the value is undefined as soon as one subject-field
    member has r = 0, whether or not that member cites a window paper.
    """
    journal_pos = corpus.journal_position(journal_id)
    return fcc_windowed_from_view(census_view(corpus, config), journal_pos, ZeroRPolicy.parse(policy))


def zero_r_diagnostics(corpus: Corpus, journal_id: str, config: IndicatorConfig) -> ZeroRDiagnostics:
    journal_pos = corpus.journal_position(journal_id)
    return diagnostics_from_view(census_view(corpus, config), journal_pos)


def zero_r_share_reason(diagnostics: ZeroRDiagnostics) -> str | None:
    return EMPTY_SUBJECT_FIELD if diagnostics.zero_r_share is None else None


def fractional_weights(corpus: Corpus, doc_id: str) -> dict[str, float]:
    """1/n weight mass a document hands to each cited journal; masses sum to 1."""
    doc_pos = corpus.document_position(doc_id)
    refs = corpus.outgoing(doc_pos)
    if refs.size == 0:
        return {}
    weight = 1.0 / refs.size
    parts: dict[str, list[float]] = defaultdict(list)
    for cited in corpus.ref_cited[refs].tolist():
        journal = int(corpus.doc_journal[cited]) if cited >= 0 else -1
        key = corpus.journal_ids[journal] if journal >= 0 else UNRESOLVED_KEY
        parts[key].append(weight)
    return {key: math.fsum(values) for key, values in sorted(parts.items())}
