"""Load and save corpora in the comma-separated and JSON-lines formats."""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path

from app.corpus.errors import (
    CorpusError,
    DanglingIdentifierError,
    DuplicateIdentifierError,
    InvalidYearError,
    SelfCitationError,
)
from app.corpus.parser import (
    DOCUMENT_COLUMNS,
    JOURNAL_COLUMNS,
    REFERENCE_COLUMNS,
    parse_documents_csv,
    parse_journals_csv,
    parse_jsonl,
    parse_references_csv,
)
from app.corpus.store import Corpus
from app.corpus import validate as rules

logger = logging.getLogger(__name__)

JOURNALS_FILE = "journals.csv"
DOCUMENTS_FILE = "documents.csv"
REFERENCES_FILE = "references.csv"

_RULE_ERRORS: dict[str, type[CorpusError]] = {
    rules.DUPLICATE_JOURNAL: DuplicateIdentifierError,
    rules.DUPLICATE_DOCUMENT: DuplicateIdentifierError,
    rules.DANGLING_JOURNAL: DanglingIdentifierError,
    rules.DANGLING_CITING: DanglingIdentifierError,
    rules.DANGLING_CITED: DanglingIdentifierError,
    rules.SELF_CITATION: SelfCitationError,
    rules.YEAR_OUT_OF_RANGE: InvalidYearError,
}


def check_corpus(corpus: Corpus, year_bounds: tuple[int, int] | None = None) -> Corpus:
    """Raise the matching CorpusError for the first broken invariant."""

    violations = rules.validate(corpus, year_bounds)
    if violations:
        first = violations[0]
        logger.error("Corpus rejected violations=%s first=%s", len(violations), first)
        raise _RULE_ERRORS.get(first.rule, CorpusError)(str(first))
    logger.info(
        "Loaded corpus journals=%s documents=%s references=%s",
        corpus.journal_count,
        corpus.document_count,
        corpus.reference_count,
    )
    return corpus


def read_corpus(
    journals_path: str | Path,
    documents_path: str | Path,
    references_path: str | Path,
) -> Corpus:
    """Parse the three corpus files without checking corpus invariants."""

    return Corpus.from_records(
        parse_journals_csv(journals_path),
        parse_documents_csv(documents_path),
        parse_references_csv(references_path),
    )


def read_corpus_dir(directory: str | Path) -> Corpus:
    directory = Path(directory)
    return read_corpus(directory / JOURNALS_FILE, directory / DOCUMENTS_FILE, directory / REFERENCES_FILE)


def read_corpus_jsonl(path: str | Path) -> Corpus:
    return Corpus.from_records(*parse_jsonl(path))


def load_corpus(
    journals_path: str | Path,
    documents_path: str | Path,
    references_path: str | Path,
    *,
    year_bounds: tuple[int, int] | None = None,
) -> Corpus:
    """Parse the three corpus files and return a validated, indexed corpus."""

    return check_corpus(read_corpus(journals_path, documents_path, references_path), year_bounds)


def load_corpus_dir(directory: str | Path, *, year_bounds: tuple[int, int] | None = None) -> Corpus:
    return check_corpus(read_corpus_dir(directory), year_bounds)


def load_corpus_jsonl(path: str | Path, *, year_bounds: tuple[int, int] | None = None) -> Corpus:
    return check_corpus(read_corpus_jsonl(path), year_bounds)


def _format_optional(value: object | None) -> str:
    return "" if value is None else str(value)


def save_corpus(corpus: Corpus, directory: str | Path) -> list[Path]:
    """Write the three comma-separated files; returns the written paths."""

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    journals_path = directory / JOURNALS_FILE
    documents_path = directory / DOCUMENTS_FILE
    references_path = directory / REFERENCES_FILE

    with journals_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(JOURNAL_COLUMNS)
        for journal_id, title, indexed in corpus.journal_rows():
            writer.writerow([journal_id, title, "true" if indexed else "false"])

    with documents_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(DOCUMENT_COLUMNS)
        writer.writerows(corpus.document_rows())

    with references_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(REFERENCE_COLUMNS)
        for citing_id, cited_id, cited_year in corpus.reference_rows():
            writer.writerow([citing_id, _format_optional(cited_id), _format_optional(cited_year)])

    logger.info("Wrote corpus directory=%s references=%s", directory, corpus.reference_count)
    return [journals_path, documents_path, references_path]


def save_corpus_jsonl(corpus: Corpus, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        for journal_id, title, indexed in corpus.journal_rows():
            record = {"kind": "journal", "journal_id": journal_id, "title": title, "indexed": indexed}
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        for doc_id, journal_id, pub_year, doc_type in corpus.document_rows():
            record = {
                "kind": "document",
                "doc_id": doc_id,
                "journal_id": journal_id,
                "pub_year": pub_year,
                "doc_type": doc_type,
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        for citing_id, cited_id, cited_year in corpus.reference_rows():
            record = {
                "kind": "reference",
                "citing_doc_id": citing_id,
                "cited_doc_id": cited_id,
                "cited_year": cited_year,
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
    return path
