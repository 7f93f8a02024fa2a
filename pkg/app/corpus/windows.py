"""Census-year window primitives shared by every indicator."""

from __future__ import annotations

import numpy as np

from app.corpus.schema import CitingProfile
from app.corpus.store import Corpus

DEFAULT_CITATION_WINDOW = 3


def window_years(census_year: int, window: int) -> tuple[int, int]:
    """Inclusive publication-year range of documents 1..window years old."""
    return census_year - window, census_year - 1


def papers_in_window(
    corpus: Corpus,
    journal_id: str,
    census_year: int,
    citation_window: int = DEFAULT_CITATION_WINDOW,
) -> frozenset[str]:
    journal_pos = corpus.journal_position(journal_id)
    first, last = window_years(census_year, citation_window)
    docs = corpus.journal_documents_in_years(journal_pos, first, last)
    docs = docs[corpus.doc_citable[docs]]
    return frozenset(corpus.doc_ids[pos] for pos in docs.tolist())


def windowed_indexed_mask(corpus: Corpus, cited: np.ndarray, census_year: int, citation_window: int) -> np.ndarray:
    """For cited document positions (UNRESOLVED allowed), which count toward r."""
    first, last = window_years(census_year, citation_window)
    mask = np.zeros(cited.shape, dtype=bool)
    resolved = np.flatnonzero(cited >= 0)
    if resolved.size == 0:
        return mask
    targets = cited[resolved]
    journal = corpus.doc_journal[targets]
    year = corpus.doc_year[targets]
    ok = (journal >= 0) & (year >= first) & (year <= last)
    ok[ok] = corpus.journal_indexed[journal[ok]]
    mask[resolved] = ok
    return mask


def citing_profile(
    corpus: Corpus,
    doc_id: str,
    census_year: int,
    citation_window: int = DEFAULT_CITATION_WINDOW,
) -> CitingProfile:
    doc_pos = corpus.document_position(doc_id)
    refs = corpus.outgoing(doc_pos)
    cited = corpus.ref_cited[refs]
    r = int(np.count_nonzero(windowed_indexed_mask(corpus, cited, census_year, citation_window)))
    return CitingProfile(doc_id=doc_id, n_total=int(refs.shape[0]), r_windowed_indexed=r)
