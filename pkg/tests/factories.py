"""Small corpus builders shared by the tests."""

from __future__ import annotations

from hypothesis import strategies as st

from app.corpus.schema import DocumentRecord, JournalRecord, ReferenceRecord
from app.corpus.store import Corpus

CENSUS = 2007


def journal_rows(*specs) -> list[tuple[str, bool]]:
    """Accepts "J1" or ("J1", False)."""
    return [(spec, True) if isinstance(spec, str) else tuple(spec) for spec in specs]


def build(journals, documents, references) -> Corpus:
    """
    journals: (journal_id, indexed); documents: (doc_id, journal_id, year) or
    (doc_id, journal_id, year, citable); references: (citing, cited) or
    (citing, None, cited_year).
    """
    return Corpus.from_records(
        [JournalRecord(journal_id=j, indexed=indexed) for j, indexed in journal_rows(*journals)],
        [
            DocumentRecord(
                doc_id=d[0],
                journal_id=d[1],
                pub_year=d[2],
                doc_type="citable" if (len(d) < 4 or d[3]) else "non_citable",
            )
            for d in documents
        ],
        [
            ReferenceRecord(citing_doc_id=r[0], cited_doc_id=r[1], cited_year=r[2] if len(r) > 2 else None)
            for r in references
        ],
    )


def papers(journal_id: str, year: int, count: int, prefix: str | None = None) -> list[tuple[str, str, int]]:
    prefix = prefix or f"{journal_id}-{year}"
    return [(f"{prefix}-{i}", journal_id, year) for i in range(count)]


@st.composite
def corpus_rows(draw, max_documents: int = 50, max_references: int = 300, max_journals: int = 6):
    """Random valid corpus rows around census year 2007."""
    journal_count = draw(st.integers(1, max_journals))
    journals = [(f"J{j}", draw(st.booleans())) for j in range(journal_count)]
    document_count = draw(st.integers(1, max_documents))
    years = st.integers(CENSUS - 12, CENSUS) | st.just(CENSUS) | st.integers(CENSUS - 3, CENSUS - 1)
    documents = [
        (
            f"D{d}",
            f"J{draw(st.integers(0, journal_count - 1))}",
            draw(years),
            draw(st.booleans() | st.just(True)),
        )
        for d in range(document_count)
    ]
    reference_count = draw(st.integers(0, max_references))
    references = []
    for _ in range(reference_count):
        citing = draw(st.integers(0, document_count - 1))
        if document_count > 1 and draw(st.integers(0, 4)) > 0:
            cited = draw(st.integers(0, document_count - 2))
            if cited >= citing:
                cited += 1
            references.append((f"D{citing}", f"D{cited}"))
        else:
            references.append((f"D{citing}", None, draw(st.none() | st.integers(CENSUS - 5, CENSUS))))
    return journals, documents, references
