"""Report serialization: comma-separated table with provenance comments, and JSON."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from app.indicators.config import IndicatorConfig, ZeroRPolicy
from app.indicators.report import IndicatorReport, JournalIndicators

TABLE_COLUMNS = (
    "journal_id",
    "paper_count",
    "citation_count",
    "rip",
    "subject_field_size",
    "cp",
    "rdcp",
    "snip",
    "fcc_total",
    "fcc_windowed",
    "zero_r_count",
    "zero_r_share",
)
_INT_COLUMNS = {"paper_count", "citation_count", "subject_field_size", "zero_r_count"}
_CONFIG_KEYS = ("census_year", "citation_window", "field_window", "median_method")


class ReportFormatError(ValueError):
    pass


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def provenance(report: IndicatorReport) -> dict[str, Any]:
    data: dict[str, Any] = {key: getattr(report.config, key) for key in _CONFIG_KEYS}
    data["zero_r_policy"] = report.zero_r_policy.value
    data["corpus_sha256"] = report.corpus_sha256
    return data


def render_table(report: IndicatorReport) -> str:
    buffer = io.StringIO()
    for key, value in provenance(report).items():
        buffer.write(f"# {key}={_cell(value)}\n")
    buffer.write(f"# median_cp={_cell(report.median_cp)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in report.journals:
        writer.writerow([_cell(getattr(row, column)) for column in TABLE_COLUMNS])
    return buffer.getvalue()


def _row_json(row: JournalIndicators) -> dict[str, Any]:
    return {
        "journal_id": row.journal_id,
        "indexed": row.indexed,
        "paper_count": row.paper_count,
        "citation_count": row.citation_count,
        "rip": row.rip,
        "subject_field_size": row.subject_field_size,
        "cp": row.cp,
        "rdcp": row.rdcp,
        "snip": row.snip,
        "fcc_total": row.fcc_total,
        "fcc_windowed": row.fcc_windowed,
        "zero_r_count": row.zero_r_count,
        "zero_r_share": row.zero_r_share,
        "nonzero_r_mean": row.nonzero_r_mean,
        "excluded_citations": row.excluded_citations,
        "reasons": dict(sorted(row.reasons.items())),
    }


def report_to_dict(report: IndicatorReport) -> dict[str, Any]:
    return {
        "provenance": provenance(report),
        "median_cp": report.median_cp,
        "median_cp_reason": report.median_cp_reason,
        "journals": [_row_json(row) for row in report.journals],
    }


def render_json(report: IndicatorReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def render(report: IndicatorReport, fmt: str) -> str:
    if fmt == "table":
        return render_table(report)
    if fmt == "json":
        return render_json(report)
    raise ValueError(f"Unknown report format: {fmt}")


def write_report(report: IndicatorReport, path: str | Path, fmt: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(render(report, fmt))
    return path


# ── reading ────────────────────────────────────────────────────────────


def _number(value: str, column: str, line: int, path: Path) -> int | float | None:
    value = value.strip()
    if not value:
        return None
    try:
        return int(value) if column in _INT_COLUMNS else float(value)
    except ValueError:
        raise ReportFormatError(f"{path}:{line}: {column} is not a number: {value!r}") from None


def _config(data: dict[str, Any], path: Path) -> tuple[IndicatorConfig, ZeroRPolicy]:
    try:
        config = IndicatorConfig(**{key: data[key] for key in _CONFIG_KEYS if data.get(key) not in (None, "")})
        policy = ZeroRPolicy.parse(data.get("zero_r_policy") or ZeroRPolicy.EXCLUDE)
    except (ValidationError, ValueError) as exc:
        raise ReportFormatError(f"{path}: invalid provenance: {exc}") from None
    return config, policy


def _parse_table(text: str, path: Path) -> IndicatorReport:
    meta: dict[str, str] = {}
    body: list[tuple[int, str]] = []
    for number, line in enumerate(text.splitlines(), start=1):
        # Provenance lines precede the header; later rows may hold ids starting with "#".
        if not body and line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep:
                meta[key.strip()] = value.strip()
        elif line.strip():
            body.append((number, line))
    if not body:
        raise ReportFormatError(f"{path}: missing header row")

    rows = list(csv.reader([line for _, line in body]))
    header = [name.strip() for name in rows[0]]
    missing = [column for column in TABLE_COLUMNS if column not in header]
    if missing:
        raise ReportFormatError(f"{path}: missing columns: {', '.join(missing)}")

    config, policy = _config(meta, path)
    journals = []
    for (line, _), cells in zip(body[1:], rows[1:]):
        if len(cells) != len(header):
            raise ReportFormatError(f"{path}:{line}: expected {len(header)} fields, got {len(cells)}")
        record = dict(zip(header, cells))
        values = {column: _number(record[column], column, line, path) for column in TABLE_COLUMNS[1:]}
        for column in _INT_COLUMNS:
            values[column] = values[column] or 0
        journals.append(JournalIndicators(journal_id=record["journal_id"], indexed=True, **values))

    median = meta.get("median_cp", "")
    return IndicatorReport(
        config=config,
        zero_r_policy=policy,
        median_cp=float(median) if median else None,
        median_cp_reason=None,
        journals=tuple(journals),
        corpus_sha256=meta.get("corpus_sha256") or None,
    )


def _parse_json(text: str, path: Path) -> IndicatorReport:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"{path}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or not isinstance(data.get("journals"), list):
        raise ReportFormatError(f"{path}: expected an object with a journals list")

    meta = data.get("provenance") or {}
    config, policy = _config(meta, path)
    journals = []
    for position, item in enumerate(data["journals"], start=1):
        missing = [column for column in TABLE_COLUMNS if column not in item]
        if missing:
            raise ReportFormatError(f"{path}: journal #{position} missing columns: {', '.join(missing)}")
        journals.append(
            JournalIndicators(
                **{column: item[column] for column in TABLE_COLUMNS},
                indexed=bool(item.get("indexed", True)),
                nonzero_r_mean=item.get("nonzero_r_mean"),
                excluded_citations=int(item.get("excluded_citations") or 0),
                reasons=dict(item.get("reasons") or {}),
            )
        )
    return IndicatorReport(
        config=config,
        zero_r_policy=policy,
        median_cp=data.get("median_cp"),
        median_cp_reason=data.get("median_cp_reason"),
        journals=tuple(journals),
        corpus_sha256=meta.get("corpus_sha256"),
    )


def read_report(path: str | Path) -> IndicatorReport:
    """Load a report written by `write_report`; the format is detected from content."""

    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return _parse_json(text, path)
    return _parse_table(text, path)
