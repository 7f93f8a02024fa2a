"""
Vectorized census-year view of a corpus.

Every indicator reads from a `CensusView`: one pass over the reference
columns produces per-document profiles (n, r), the qualifying citation set
and the subject-field membership table. Views are cached per
(corpus, config) pair, so per-journal calls and `compute_all` share the work.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from app.corpus.store import Corpus
from app.corpus.windows import windowed_indexed_mask
from app.indicators.config import IndicatorConfig

logger = logging.getLogger(__name__)


def _year_mask(years: np.ndarray, bounds: tuple[int, int]) -> np.ndarray:
    first, last = bounds
    return (years >= first) & (years <= last)


def _reciprocal_sums(journal: np.ndarray, denominator: np.ndarray, size: int) -> np.ndarray:
    """Per journal, the sum of 1/denominator over the given citations."""
    sums = np.zeros(size, dtype=np.float64)
    if journal.size == 0:
        return sums
    width = int(denominator.max()) + 1
    keys, counts = np.unique(journal * width + denominator, return_counts=True)
    group_journal = keys // width
    terms = counts / (keys % width)
    bounds = np.searchsorted(group_journal, np.arange(size + 1), side="left")
    for j in np.flatnonzero(np.diff(bounds)).tolist():
        sums[j] = math.fsum(terms[bounds[j] : bounds[j + 1]].tolist())
    return sums


@dataclass(frozen=True, eq=False)
class CensusView:
    config: IndicatorConfig

    # per document
    n_total: np.ndarray
    r: np.ndarray
    citing_doc: np.ndarray
    window_paper: np.ndarray

    # per journal
    paper_count: np.ndarray
    citation_count: np.ndarray
    fcc_total_sum: np.ndarray
    fcc_windowed_sum: np.ndarray
    excluded_citations: np.ndarray
    field_size: np.ndarray
    field_r_sum: np.ndarray
    zero_r_count: np.ndarray

    # subject fields: member documents of journal j are field_docs[field_offsets[j]:field_offsets[j + 1]]
    field_docs: np.ndarray
    field_offsets: np.ndarray

    def members(self, journal_pos: int) -> np.ndarray:
        return self.field_docs[self.field_offsets[journal_pos] : self.field_offsets[journal_pos + 1]]

    def citation_potential(self, journal_pos: int) -> float | None:
        size = int(self.field_size[journal_pos])
        if size == 0:
            return None
        return int(self.field_r_sum[journal_pos]) / size


def build_census_view(corpus: Corpus, config: IndicatorConfig) -> CensusView:
    started = time.perf_counter()
    journals = corpus.journal_count
    documents = corpus.document_count
    citing = corpus.ref_citing
    cited = corpus.ref_cited

    has_citing = citing >= 0
    n_total = np.bincount(citing[has_citing], minlength=documents)
    counted = has_citing & windowed_indexed_mask(corpus, cited, config.census_year, config.citation_window)
    r = np.bincount(citing[counted], minlength=documents)

    citing_doc = corpus.doc_citable & (corpus.doc_year == config.census_year)
    valid_journal = corpus.doc_journal >= 0
    window_paper = corpus.doc_citable & valid_journal & _year_mask(corpus.doc_year, config.citation_years)
    paper_count = np.bincount(corpus.doc_journal[window_paper], minlength=journals)

    # Resolved references from census-year citable documents.
    live = np.flatnonzero(has_citing & (cited >= 0))
    live = live[citing_doc[citing[live]]]
    live_citing = citing[live]
    live_cited = cited[live]

    qualifying = window_paper[live_cited]
    q_citing = live_citing[qualifying]
    q_journal = corpus.doc_journal[live_cited[qualifying]]
    citation_count = np.bincount(q_journal, minlength=journals)
    fcc_total_sum = _reciprocal_sums(q_journal, n_total[q_citing], journals)
    q_r = r[q_citing]
    positive = q_r > 0
    fcc_windowed_sum = _reciprocal_sums(q_journal[positive], q_r[positive], journals)
    excluded_citations = np.bincount(q_journal[~positive], minlength=journals)

    in_field = (
        corpus.doc_citable[live_cited]
        & valid_journal[live_cited]
        & _year_mask(corpus.doc_year[live_cited], config.field_years)
    )
    width = max(documents, 1)
    pairs = np.unique(corpus.doc_journal[live_cited[in_field]] * width + live_citing[in_field])
    pair_journal = pairs // width
    field_docs = pairs % width
    field_size = np.bincount(pair_journal, minlength=journals)
    field_offsets = np.zeros(journals + 1, dtype=np.int64)
    np.cumsum(field_size, out=field_offsets[1:])
    member_r = r[field_docs]
    r_cumsum = np.zeros(field_docs.shape[0] + 1, dtype=np.int64)
    np.cumsum(member_r, out=r_cumsum[1:])
    field_r_sum = r_cumsum[field_offsets[1:]] - r_cumsum[field_offsets[:-1]]
    zero_r_count = np.bincount(pair_journal[member_r == 0], minlength=journals)

    view = CensusView(
        config=config,
        n_total=n_total,
        r=r,
        citing_doc=citing_doc,
        window_paper=window_paper,
        paper_count=paper_count,
        citation_count=citation_count,
        fcc_total_sum=fcc_total_sum,
        fcc_windowed_sum=fcc_windowed_sum,
        excluded_citations=excluded_citations,
        field_size=field_size,
        field_r_sum=field_r_sum,
        zero_r_count=zero_r_count,
        field_docs=field_docs,
        field_offsets=field_offsets,
    )
    logger.debug(
        "Built census view census_year=%s references=%s qualifying=%s field_pairs=%s elapsed=%.3fs",
        config.census_year,
        corpus.reference_count,
        int(q_journal.shape[0]),
        int(pairs.shape[0]),
        time.perf_counter() - started,
    )
    return view


@lru_cache(maxsize=4)
def census_view(corpus: Corpus, config: IndicatorConfig) -> CensusView:
    return build_census_view(corpus, config)
