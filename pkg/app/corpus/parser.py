"""Parsers for the corpus file formats (comma-separated and JSON lines)."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterator, TypeVar

from pydantic import BaseModel, ValidationError

from app.corpus.errors import CorpusParseError
from app.corpus.schema import DocumentRecord, JournalRecord, ReferenceRecord

JOURNAL_COLUMNS = ("journal_id", "title", "indexed")
DOCUMENT_COLUMNS = ("doc_id", "journal_id", "pub_year", "doc_type")
REFERENCE_COLUMNS = ("citing_doc_id", "cited_doc_id", "cited_year")

_BOOLEANS = {"true": True, "false": False}

RecordT = TypeVar("RecordT", bound=BaseModel)


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error.get("loc", ())) or "row"
        parts.append(f"{location}: {error.get('msg')}")
    return "; ".join(parts)


def _empty_to_none(value: Any) -> Any:
    if isinstance(value, str) and not value.strip():
        return None
    return value


def _parse_indexed(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.strip().lower() in _BOOLEANS:
        return _BOOLEANS[value.strip().lower()]
    raise ValueError(f"indexed must be true or false, got {value!r}")


def _normalize_journal(row: dict[str, Any]) -> dict[str, Any]:
    row = dict(row)
    row["indexed"] = _parse_indexed(row.get("indexed"))
    if row.get("title") is None:
        row["title"] = ""
    return row


def _normalize_document(row: dict[str, Any]) -> dict[str, Any]:
    row = dict(row)
    doc_type = row.get("doc_type")
    if isinstance(doc_type, str):
        row["doc_type"] = doc_type.strip() or "citable"
    elif doc_type is None:
        row["doc_type"] = "citable"
    return row


def _normalize_reference(row: dict[str, Any]) -> dict[str, Any]:
    row = dict(row)
    row["cited_doc_id"] = _empty_to_none(row.get("cited_doc_id"))
    row["cited_year"] = _empty_to_none(row.get("cited_year"))
    return row


_KINDS: dict[str, tuple[type[BaseModel], Any]] = {
    "journal": (JournalRecord, _normalize_journal),
    "document": (DocumentRecord, _normalize_document),
    "reference": (ReferenceRecord, _normalize_reference),
}


def _build(model: type[RecordT], normalize, row: dict[str, Any], path: Path, line: int) -> RecordT:
    try:
        return model.model_validate(normalize(row))
    except ValidationError as exc:
        raise CorpusParseError(path, line, _validation_message(exc)) from None
    except ValueError as exc:
        raise CorpusParseError(path, line, str(exc)) from None


def _read_csv(path: Path, columns: tuple[str, ...]) -> Iterator[tuple[int, dict[str, str]]]:
    with path.open("r", encoding="utf-8-sig", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusParseError(path, 1, "missing header row") from None
        except csv.Error as exc:
            raise CorpusParseError(path, reader.line_num, str(exc)) from None
        header = [name.strip() for name in header]
        if sorted(header) != sorted(columns):
            raise CorpusParseError(
                path, 1, f"expected columns {','.join(columns)}, got {','.join(header)}"
            )
        while True:
            try:
                row = next(reader)
            except StopIteration:
                return
            except csv.Error as exc:
                raise CorpusParseError(path, reader.line_num, str(exc)) from None
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise CorpusParseError(
                    path, reader.line_num, f"expected {len(header)} fields, got {len(row)}"
                )
            yield reader.line_num, dict(zip(header, row))


def parse_journals_csv(path: str | Path) -> list[JournalRecord]:
    path = Path(path)
    return [
        _build(JournalRecord, _normalize_journal, row, path, line)
        for line, row in _read_csv(path, JOURNAL_COLUMNS)
    ]


def parse_documents_csv(path: str | Path) -> list[DocumentRecord]:
    path = Path(path)
    return [
        _build(DocumentRecord, _normalize_document, row, path, line)
        for line, row in _read_csv(path, DOCUMENT_COLUMNS)
    ]


def parse_references_csv(path: str | Path) -> list[ReferenceRecord]:
    path = Path(path)
    return [
        _build(ReferenceRecord, _normalize_reference, row, path, line)
        for line, row in _read_csv(path, REFERENCE_COLUMNS)
    ]


def parse_jsonl(
    path: str | Path,
) -> tuple[list[JournalRecord], list[DocumentRecord], list[ReferenceRecord]]:
    """Parse the single-file form: one JSON object per line with a `kind` field."""

    path = Path(path)
    parsed: dict[str, list] = {kind: [] for kind in _KINDS}
    with path.open("r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(path, line_number, f"invalid JSON: {exc.msg}") from None
            if not isinstance(payload, dict):
                raise CorpusParseError(path, line_number, "record must be a JSON object")
            kind = payload.pop("kind", None)
            if kind not in _KINDS:
                raise CorpusParseError(
                    path, line_number, f"kind must be one of {', '.join(_KINDS)}, got {kind!r}"
                )
            model, normalize = _KINDS[kind]
            parsed[kind].append(_build(model, normalize, payload, path, line_number))
    return parsed["journal"], parsed["document"], parsed["reference"]
