"""Invariant checks over a corpus; violations are data, not failures."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from app.corpus.store import DANGLING, Corpus
from app.settings import get_settings

DUPLICATE_JOURNAL = "duplicate_journal_id"
DUPLICATE_DOCUMENT = "duplicate_doc_id"
DANGLING_JOURNAL = "dangling_journal_id"
DANGLING_CITING = "dangling_citing_doc_id"
DANGLING_CITED = "dangling_cited_doc_id"
SELF_CITATION = "self_citation"
YEAR_OUT_OF_RANGE = "pub_year_out_of_range"
INDEX_MISMATCH = "index_mismatch"


@dataclass(frozen=True)
class Violation:
    entity: str
    identifier: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.entity} {self.identifier}: {self.rule}: {self.detail}"


def _duplicates(entity: str, ids: tuple[str, ...], rule: str) -> list[Violation]:
    counts = Counter(ids)
    return [
        Violation(entity, identifier, rule, f"appears {count} times")
        for identifier, count in sorted(counts.items())
        if count > 1
    ]


def _reference_label(corpus: Corpus, pos: int) -> str:
    citing = int(corpus.ref_citing[pos])
    cited = int(corpus.ref_cited[pos])
    citing_id = corpus.doc_ids[citing] if citing >= 0 else corpus.dangling.get(("reference.citing_doc_id", pos), "?")
    if cited >= 0:
        cited_id = corpus.doc_ids[cited]
    elif cited == DANGLING:
        cited_id = corpus.dangling.get(("reference.cited_doc_id", pos), "?")
    else:
        cited_id = "<unresolved>"
    return f"#{pos + 1} ({citing_id} -> {cited_id})"


def _index_violations(corpus: Corpus) -> list[Violation]:
    violations: list[Violation] = []
    size = corpus.document_count
    citing = corpus.ref_citing[corpus.ref_citing >= 0]
    cited = corpus.ref_cited[corpus.ref_cited >= 0]
    expected_out = np.bincount(citing, minlength=size)
    expected_in = np.bincount(cited, minlength=size)
    if not np.array_equal(expected_out, np.diff(corpus.out_offsets)):
        violations.append(Violation("corpus", "outgoing", INDEX_MISMATCH, "outgoing index disagrees with edge list"))
    if not np.array_equal(expected_in, np.diff(corpus.in_offsets)):
        violations.append(Violation("corpus", "incoming", INDEX_MISMATCH, "incoming index disagrees with edge list"))
    if violations:
        return violations
    owners = np.repeat(np.arange(size), np.diff(corpus.out_offsets))
    if not np.array_equal(corpus.ref_citing[corpus.out_order], owners):
        violations.append(Violation("corpus", "outgoing", INDEX_MISMATCH, "outgoing slices point at other documents"))
    owners = np.repeat(np.arange(size), np.diff(corpus.in_offsets))
    if not np.array_equal(corpus.ref_cited[corpus.in_order], owners):
        violations.append(Violation("corpus", "incoming", INDEX_MISMATCH, "incoming slices point at other documents"))
    return violations


def validate(corpus: Corpus, year_bounds: tuple[int, int] | None = None) -> list[Violation]:
    """Return every broken corpus invariant; an empty list means the corpus is valid."""

    min_year, max_year = year_bounds or get_settings().year_bounds
    violations: list[Violation] = []

    violations += _duplicates("journal", corpus.journal_ids, DUPLICATE_JOURNAL)
    violations += _duplicates("document", corpus.doc_ids, DUPLICATE_DOCUMENT)

    for pos in np.flatnonzero(corpus.doc_journal == DANGLING).tolist():
        violations.append(
            Violation(
                "document",
                corpus.doc_ids[pos],
                DANGLING_JOURNAL,
                f"journal_id {corpus.dangling[('document.journal_id', pos)]} not found",
            )
        )

    out_of_range = (corpus.doc_year < min_year) | (corpus.doc_year > max_year)
    for pos in np.flatnonzero(out_of_range).tolist():
        violations.append(
            Violation(
                "document",
                corpus.doc_ids[pos],
                YEAR_OUT_OF_RANGE,
                f"pub_year {int(corpus.doc_year[pos])} outside {min_year}-{max_year}",
            )
        )

    for pos in np.flatnonzero(corpus.ref_citing == DANGLING).tolist():
        violations.append(
            Violation(
                "reference",
                _reference_label(corpus, pos),
                DANGLING_CITING,
                f"citing_doc_id {corpus.dangling[('reference.citing_doc_id', pos)]} not found",
            )
        )
    for pos in np.flatnonzero(corpus.ref_cited == DANGLING).tolist():
        violations.append(
            Violation(
                "reference",
                _reference_label(corpus, pos),
                DANGLING_CITED,
                f"cited_doc_id {corpus.dangling[('reference.cited_doc_id', pos)]} not found",
            )
        )

    self_cites = (corpus.ref_citing >= 0) & (corpus.ref_citing == corpus.ref_cited)
    for pos in np.flatnonzero(self_cites).tolist():
        violations.append(
            Violation("reference", _reference_label(corpus, pos), SELF_CITATION, "document cites itself")
        )

    violations += _index_violations(corpus)
    return violations
