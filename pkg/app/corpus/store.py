"""Immutable, array-backed citation corpus with its derived indices."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from app.corpus.errors import UnknownDocumentError, UnknownJournalError
from app.corpus.schema import DocType, DocumentRecord, JournalRecord, ReferenceRecord

# Position codes stored in the index arrays.
UNRESOLVED = -1
DANGLING = -2
NO_YEAR = -1


def _frozen(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


def _csr(keys: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Group positions by key: returns (order, offsets) with offsets of length size + 1."""
    valid = keys >= 0
    positions = np.flatnonzero(valid)
    order = positions[np.argsort(keys[valid], kind="stable")]
    counts = np.bincount(keys[valid], minlength=size)
    offsets = np.zeros(size + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return _frozen(order.astype(np.int64)), _frozen(offsets)


@dataclass(frozen=True, eq=False)
class Corpus:
    """
    Columnar corpus. Journals, documents and references are addressed by
    position; identifier columns keep the original ids. Position arrays use
    UNRESOLVED for references without an in-corpus target and DANGLING for
    identifiers that do not resolve (only possible in hand-built corpora;
    `validate` reports them).
    """

    journal_ids: tuple[str, ...]
    journal_titles: tuple[str, ...]
    journal_indexed: np.ndarray
    doc_ids: tuple[str, ...]
    doc_journal: np.ndarray
    doc_year: np.ndarray
    doc_citable: np.ndarray
    ref_citing: np.ndarray
    ref_cited: np.ndarray
    ref_cited_year: np.ndarray
    dangling: dict[tuple[str, int], str] = field(default_factory=dict)

    _journal_pos: dict[str, int] = field(init=False, repr=False)
    _doc_pos: dict[str, int] = field(init=False, repr=False)
    out_order: np.ndarray = field(init=False, repr=False)
    out_offsets: np.ndarray = field(init=False, repr=False)
    in_order: np.ndarray = field(init=False, repr=False)
    in_offsets: np.ndarray = field(init=False, repr=False)
    journal_doc_order: np.ndarray = field(init=False, repr=False)
    journal_doc_offsets: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for name in (
            "journal_indexed",
            "doc_journal",
            "doc_year",
            "doc_citable",
            "ref_citing",
            "ref_cited",
            "ref_cited_year",
        ):
            _frozen(getattr(self, name))

        journal_pos: dict[str, int] = {}
        for pos, journal_id in enumerate(self.journal_ids):
            journal_pos.setdefault(journal_id, pos)
        doc_pos: dict[str, int] = {}
        for pos, doc_id in enumerate(self.doc_ids):
            doc_pos.setdefault(doc_id, pos)
        object.__setattr__(self, "_journal_pos", journal_pos)
        object.__setattr__(self, "_doc_pos", doc_pos)

        out_order, out_offsets = _csr(self.ref_citing, self.document_count)
        in_order, in_offsets = _csr(self.ref_cited, self.document_count)
        object.__setattr__(self, "out_order", out_order)
        object.__setattr__(self, "out_offsets", out_offsets)
        object.__setattr__(self, "in_order", in_order)
        object.__setattr__(self, "in_offsets", in_offsets)

        # Documents grouped by journal, ascending publication year within a journal.
        by_year = np.argsort(self.doc_year, kind="stable")
        grouped, offsets = _csr(self.doc_journal[by_year], self.journal_count)
        object.__setattr__(self, "journal_doc_order", _frozen(by_year[grouped]))
        object.__setattr__(self, "journal_doc_offsets", offsets)

    # ── construction ───────────────────────────────────────────────────

    @classmethod
    def from_records(
        cls,
        journals: Iterable[JournalRecord],
        documents: Iterable[DocumentRecord],
        references: Iterable[ReferenceRecord],
    ) -> "Corpus":
        journals = list(journals)
        documents = list(documents)
        references = list(references)

        journal_pos: dict[str, int] = {}
        for pos, journal in enumerate(journals):
            journal_pos.setdefault(journal.journal_id, pos)
        doc_pos: dict[str, int] = {}
        for pos, document in enumerate(documents):
            doc_pos.setdefault(document.doc_id, pos)

        dangling: dict[tuple[str, int], str] = {}

        doc_journal = np.empty(len(documents), dtype=np.int64)
        for pos, document in enumerate(documents):
            target = journal_pos.get(document.journal_id, DANGLING)
            if target == DANGLING:
                dangling[("document.journal_id", pos)] = document.journal_id
            doc_journal[pos] = target

        ref_citing = np.empty(len(references), dtype=np.int64)
        ref_cited = np.empty(len(references), dtype=np.int64)
        ref_cited_year = np.empty(len(references), dtype=np.int64)
        for pos, reference in enumerate(references):
            citing = doc_pos.get(reference.citing_doc_id, DANGLING)
            if citing == DANGLING:
                dangling[("reference.citing_doc_id", pos)] = reference.citing_doc_id
            ref_citing[pos] = citing
            if reference.cited_doc_id is None:
                ref_cited[pos] = UNRESOLVED
            else:
                cited = doc_pos.get(reference.cited_doc_id, DANGLING)
                if cited == DANGLING:
                    dangling[("reference.cited_doc_id", pos)] = reference.cited_doc_id
                ref_cited[pos] = cited
            ref_cited_year[pos] = NO_YEAR if reference.cited_year is None else reference.cited_year

        return cls(
            journal_ids=tuple(j.journal_id for j in journals),
            journal_titles=tuple(j.title for j in journals),
            journal_indexed=np.fromiter((j.indexed for j in journals), dtype=bool, count=len(journals)),
            doc_ids=tuple(d.doc_id for d in documents),
            doc_journal=doc_journal,
            doc_year=np.fromiter((d.pub_year for d in documents), dtype=np.int64, count=len(documents)),
            doc_citable=np.fromiter((d.citable for d in documents), dtype=bool, count=len(documents)),
            ref_citing=ref_citing,
            ref_cited=ref_cited,
            ref_cited_year=ref_cited_year,
            dangling=dangling,
        )

    # ── sizes and lookups ──────────────────────────────────────────────

    @property
    def journal_count(self) -> int:
        return len(self.journal_ids)

    @property
    def document_count(self) -> int:
        return len(self.doc_ids)

    @property
    def reference_count(self) -> int:
        return int(self.ref_citing.shape[0])

    def journal_position(self, journal_id: str) -> int:
        try:
            return self._journal_pos[journal_id]
        except KeyError:
            raise UnknownJournalError(f"Unknown journal: {journal_id}") from None

    def document_position(self, doc_id: str) -> int:
        try:
            return self._doc_pos[doc_id]
        except KeyError:
            raise UnknownDocumentError(f"Unknown document: {doc_id}") from None

    def outgoing(self, doc_pos: int) -> np.ndarray:
        """Reference positions whose citing document is doc_pos."""
        return self.out_order[self.out_offsets[doc_pos] : self.out_offsets[doc_pos + 1]]

    def journal_documents(self, journal_pos: int) -> np.ndarray:
        """Document positions of a journal, ascending by publication year."""
        start = self.journal_doc_offsets[journal_pos]
        end = self.journal_doc_offsets[journal_pos + 1]
        return self.journal_doc_order[start:end]

    def journal_documents_in_years(self, journal_pos: int, first_year: int, last_year: int) -> np.ndarray:
        docs = self.journal_documents(journal_pos)
        years = self.doc_year[docs]
        lo = np.searchsorted(years, first_year, side="left")
        hi = np.searchsorted(years, last_year, side="right")
        return docs[lo:hi]

    # ── records view ───────────────────────────────────────────────────

    def _raw_id(self, ids: Sequence[str], position: int, key: tuple[str, int]) -> str:
        if position >= 0:
            return ids[position]
        return self.dangling[key]

    def journal_rows(self) -> Iterator[tuple[str, str, bool]]:
        """(journal_id, title, indexed) in storage order."""
        indexed = self.journal_indexed.tolist()
        for pos, journal_id in enumerate(self.journal_ids):
            yield journal_id, self.journal_titles[pos], indexed[pos]

    def document_rows(self) -> Iterator[tuple[str, str, int, str]]:
        """(doc_id, journal_id, pub_year, doc_type) in storage order."""
        journals = self.doc_journal.tolist()
        years = self.doc_year.tolist()
        citable = self.doc_citable.tolist()
        for pos, doc_id in enumerate(self.doc_ids):
            journal_id = self._raw_id(self.journal_ids, journals[pos], ("document.journal_id", pos))
            doc_type = DocType.CITABLE.value if citable[pos] else DocType.NON_CITABLE.value
            yield doc_id, journal_id, years[pos], doc_type

    def reference_rows(self) -> Iterator[tuple[str, str | None, int | None]]:
        """(citing_doc_id, cited_doc_id, cited_year) in storage order."""
        citing = self.ref_citing.tolist()
        cited = self.ref_cited.tolist()
        cited_years = self.ref_cited_year.tolist()
        for pos in range(len(citing)):
            citing_id = self._raw_id(self.doc_ids, citing[pos], ("reference.citing_doc_id", pos))
            if cited[pos] == UNRESOLVED:
                year = cited_years[pos]
                yield citing_id, None, None if year == NO_YEAR else year
            else:
                yield citing_id, self._raw_id(self.doc_ids, cited[pos], ("reference.cited_doc_id", pos)), None

    def iter_journals(self) -> Iterator[JournalRecord]:
        for journal_id, title, indexed in self.journal_rows():
            yield JournalRecord(journal_id=journal_id, title=title, indexed=indexed)

    def iter_documents(self) -> Iterator[DocumentRecord]:
        for doc_id, journal_id, pub_year, doc_type in self.document_rows():
            yield DocumentRecord(doc_id=doc_id, journal_id=journal_id, pub_year=pub_year, doc_type=doc_type)

    def iter_references(self) -> Iterator[ReferenceRecord]:
        for citing_id, cited_id, cited_year in self.reference_rows():
            yield ReferenceRecord(citing_doc_id=citing_id, cited_doc_id=cited_id, cited_year=cited_year)

    def records(self) -> tuple[list[JournalRecord], list[DocumentRecord], list[ReferenceRecord]]:
        return list(self.iter_journals()), list(self.iter_documents()), list(self.iter_references())

    def content_hash(self) -> str:
        """SHA-256 over the canonical, order-independent content of the corpus."""
        sections = (
            ("journals", (f"{j}\x1f{t}\x1f{int(i)}" for j, t, i in self.journal_rows())),
            ("documents", (f"{d}\x1f{j}\x1f{y}\x1f{t}" for d, j, y, t in self.document_rows())),
            (
                "references",
                (
                    f"{c}\x1f{'' if t is None else t}\x1f{'' if y is None else y}"
                    for c, t, y in self.reference_rows()
                ),
            ),
        )
        digest = hashlib.sha256()
        for name, lines in sections:
            digest.update(f"[{name}]\n".encode("utf-8"))
            for line in sorted(lines):
                digest.update(line.encode("utf-8"))
                digest.update(b"\n")
        return digest.hexdigest()
