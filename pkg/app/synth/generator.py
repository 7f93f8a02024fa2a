"""Field generator: builds a self-contained corpus from a FieldSpec."""

from __future__ import annotations

import hashlib
import logging
import math
from typing import Sequence

import numpy as np

from app.corpus.store import NO_YEAR, UNRESOLVED, Corpus
from app.synth.spec import CitationConcentration, FieldSpec, InfeasibleSpecError

logger = logging.getLogger(__name__)


def sub_seed(field_id: str, seed: int, stream: str) -> int:
    """Stable 64-bit seed for one random stream of one field."""
    payload = f"{field_id}\x1f{seed}\x1f{stream}".encode("utf-8")
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


def stream_rng(spec: FieldSpec, stream: str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(sub_seed(spec.field_id, spec.seed, stream)))


def _half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


class _Layout:
    """Positions of the field's documents: journal-major, then year, then paper."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.first_year, self.last_year = spec.years
        self.year_count = self.last_year - self.first_year + 1
        self.per_journal = self.year_count * spec.papers_per_journal_per_year
        self.document_count = spec.journal_count * self.per_journal

    def position(self, journal: np.ndarray, year: np.ndarray, paper: np.ndarray) -> np.ndarray:
        year_index = year - self.first_year
        return (journal * self.year_count + year_index) * self.spec.papers_per_journal_per_year + paper

    def census_documents(self) -> np.ndarray:
        papers = self.spec.papers_per_journal_per_year
        journal = np.repeat(np.arange(self.spec.journal_count), papers)
        paper = np.tile(np.arange(papers), self.spec.journal_count)
        return self.position(journal, np.full(journal.shape, self.last_year), paper)

    def pool(self, first_year: int, last_year: int, rng: np.random.Generator) -> np.ndarray:
        """
        Citable documents published in [first_year, last_year], each journal's
        documents shuffled, then interleaved so pool[i * J + k] belongs to journal k.
        """
        first_year = max(first_year, self.first_year)
        if first_year > last_year:
            return np.empty(0, dtype=np.int64)
        years = np.arange(first_year, last_year + 1)
        papers = self.spec.papers_per_journal_per_year
        year_grid = np.repeat(years, papers)
        paper_grid = np.tile(np.arange(papers), years.size)
        rows = []
        for journal in range(self.spec.journal_count):
            docs = self.position(np.full(year_grid.shape, journal), year_grid, paper_grid)
            rows.append(rng.permutation(docs))
        return np.stack(rows).T.ravel().astype(np.int64)


def _round_robin(pool: np.ndarray, per_doc: int, doc_count: int, rng: np.random.Generator) -> np.ndarray:
    if per_doc == 0:
        return np.empty((doc_count, 0), dtype=np.int64)
    start = int(rng.integers(pool.size))
    cursor = (start + np.arange(doc_count * per_doc)) % pool.size
    return pool[cursor].reshape(doc_count, per_doc)


def _weights(spec: FieldSpec, pool: np.ndarray, doc_year: np.ndarray) -> np.ndarray | None:
    if spec.citation_concentration is not CitationConcentration.PROPORTIONAL_TO_AGE or pool.size == 0:
        return None
    age = (spec.census_year - doc_year[pool]).astype(np.float64)
    return age / age.sum()


def _sampled(
    pool: np.ndarray,
    counts: np.ndarray,
    weights: np.ndarray | None,
    rng: np.random.Generator,
) -> list[np.ndarray]:
    return [
        rng.choice(pool, size=int(count), replace=False, p=weights) if count else np.empty(0, dtype=np.int64)
        for count in counts.tolist()
    ]


def _require(pool: np.ndarray, needed: int, what: str, spec: FieldSpec) -> None:
    if needed > pool.size:
        raise InfeasibleSpecError(
            f"field {spec.field_id}: {needed} {what} references per document requested "
            f"but only {pool.size} eligible targets exist"
        )


def generate_field(spec: FieldSpec) -> Corpus:
    """
    Deterministic in (spec, seed): every random stream is seeded from
    (field_id, seed, stream name), so adding references of one kind never
    moves the targets drawn for another.
    """

    layout = _Layout(spec)
    census = spec.census_year
    window_first = census - spec.citation_window
    journals = spec.journal_count
    papers = spec.papers_per_journal_per_year

    doc_journal = np.repeat(np.arange(journals, dtype=np.int64), layout.per_journal)
    doc_year = np.tile(np.repeat(np.arange(layout.first_year, census + 1, dtype=np.int64), papers), journals)
    paper_index = np.tile(np.arange(papers), journals * layout.year_count)

    journal_ids = tuple(f"{spec.field_id}-j{j:03d}" for j in range(journals))
    doc_ids = tuple(
        f"{journal_ids[j]}-{y}-{p:04d}"
        for j, y, p in zip(doc_journal.tolist(), doc_year.tolist(), paper_index.tolist())
    )

    layout_rng = stream_rng(spec, "layout")
    window_pool = layout.pool(window_first, census - 1, layout_rng)
    old_pool = layout.pool(layout.first_year, window_first - 1, layout_rng)

    citing = layout.census_documents()
    citing_count = citing.size
    k = spec.refs_per_paper

    if spec.citation_concentration is CitationConcentration.BALANCED:
        resolved = _half_up(k * spec.indexed_share)
        in_window = _half_up(resolved * spec.in_window_share)
        n_window = np.full(citing_count, in_window)
        n_old = np.full(citing_count, resolved - in_window)
    else:
        split = stream_rng(spec, "split")
        n_resolved = split.binomial(k, spec.indexed_share, size=citing_count)
        n_window = split.binomial(n_resolved, spec.in_window_share)
        n_old = n_resolved - n_window
    n_unresolved = k - n_window - n_old

    _require(window_pool, int(n_window.max(initial=0)), "in-window", spec)
    _require(old_pool, int(n_old.max(initial=0)), "older", spec)
    _require(old_pool, spec.old_refs_per_paper, "extra older", spec)

    window_rng = stream_rng(spec, "window")
    old_rng = stream_rng(spec, "old")
    extra_rng = stream_rng(spec, "extra")
    if spec.citation_concentration is CitationConcentration.BALANCED:
        window_targets = list(_round_robin(window_pool, int(n_window[0]), citing_count, window_rng))
        old_targets = list(_round_robin(old_pool, int(n_old[0]), citing_count, old_rng))
        extra_targets = list(_round_robin(old_pool, spec.old_refs_per_paper, citing_count, extra_rng))
    else:
        window_targets = _sampled(window_pool, n_window, _weights(spec, window_pool, doc_year), window_rng)
        old_targets = _sampled(old_pool, n_old, _weights(spec, old_pool, doc_year), old_rng)
        extra_targets = _sampled(
            old_pool, np.full(citing_count, spec.old_refs_per_paper), _weights(spec, old_pool, doc_year), extra_rng
        )

    unresolved_rng = stream_rng(spec, "unresolved")
    cited_parts: list[np.ndarray] = []
    year_parts: list[np.ndarray] = []
    for row in range(citing_count):
        unresolved = int(n_unresolved[row])
        resolved_targets = np.concatenate([window_targets[row], old_targets[row]]).astype(np.int64)
        extra = np.asarray(extra_targets[row], dtype=np.int64)
        cited_parts.append(
            np.concatenate([resolved_targets, np.full(unresolved, UNRESOLVED, dtype=np.int64), extra])
        )
        year_parts.append(
            np.concatenate(
                [
                    np.full(resolved_targets.size, NO_YEAR, dtype=np.int64),
                    unresolved_rng.integers(window_first, census, size=unresolved).astype(np.int64),
                    np.full(extra.size, NO_YEAR, dtype=np.int64),
                ]
            )
        )

    per_doc = np.array([part.size for part in cited_parts], dtype=np.int64)
    ref_citing = np.repeat(citing.astype(np.int64), per_doc)
    ref_cited = np.concatenate(cited_parts) if cited_parts else np.empty(0, dtype=np.int64)
    ref_cited_year = np.concatenate(year_parts) if year_parts else np.empty(0, dtype=np.int64)

    corpus = Corpus(
        journal_ids=journal_ids,
        journal_titles=tuple(f"{spec.field_id} journal {j}" for j in range(journals)),
        journal_indexed=np.ones(journals, dtype=bool),
        doc_ids=doc_ids,
        doc_journal=doc_journal,
        doc_year=doc_year,
        doc_citable=np.ones(layout.document_count, dtype=bool),
        ref_citing=ref_citing,
        ref_cited=ref_cited,
        ref_cited_year=ref_cited_year,
    )
    logger.debug(
        "Generated field field_id=%s documents=%s references=%s mode=%s",
        spec.field_id,
        corpus.document_count,
        corpus.reference_count,
        spec.citation_concentration.value,
    )
    return corpus


def _shift(values: np.ndarray, offset: int) -> np.ndarray:
    return np.where(values >= 0, values + offset, values)


def assemble(parts: Sequence[Corpus]) -> Corpus:
    """Concatenate self-contained fragments into one corpus."""

    journal_offset = 0
    doc_offset = 0
    doc_journal, ref_citing, ref_cited = [], [], []
    for part in parts:
        doc_journal.append(_shift(part.doc_journal, journal_offset))
        ref_citing.append(_shift(part.ref_citing, doc_offset))
        ref_cited.append(_shift(part.ref_cited, doc_offset))
        journal_offset += part.journal_count
        doc_offset += part.document_count

    def joined(name: str, dtype) -> np.ndarray:
        arrays = [getattr(part, name) for part in parts]
        return np.concatenate(arrays).astype(dtype) if arrays else np.empty(0, dtype=dtype)

    def merged(arrays: list[np.ndarray]) -> np.ndarray:
        return np.concatenate(arrays).astype(np.int64) if arrays else np.empty(0, dtype=np.int64)

    return Corpus(
        journal_ids=tuple(j for part in parts for j in part.journal_ids),
        journal_titles=tuple(t for part in parts for t in part.journal_titles),
        journal_indexed=joined("journal_indexed", bool),
        doc_ids=tuple(d for part in parts for d in part.doc_ids),
        doc_journal=merged(doc_journal),
        doc_year=joined("doc_year", np.int64),
        doc_citable=joined("doc_citable", bool),
        ref_citing=merged(ref_citing),
        ref_cited=merged(ref_cited),
        ref_cited_year=joined("ref_cited_year", np.int64),
    )
