"""
Benchmark corpora for the field-normalization arguments.

Each builder checks the structural property it advertises right after
construction and raises BenchmarkConstructionError if it does not hold.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np
from pydantic import ValidationError

from app.corpus.io import save_corpus
from app.corpus.schema import DocumentRecord, JournalRecord, ReferenceRecord
from app.corpus.store import Corpus
from app.corpus.windows import DEFAULT_CITATION_WINDOW, windowed_indexed_mask
from app.synth.generator import assemble, generate_field, sub_seed
from app.synth.spec import (
    BenchmarkConstructionError,
    CitationConcentration,
    FieldSpec,
    InfeasibleSpecError,
    SynthError,
)

logger = logging.getLogger(__name__)

DEFAULT_CENSUS_YEAR = 2007
MANIFEST_FILE = "manifest.json"


def census_profiles(corpus: Corpus, census_year: int, citation_window: int = DEFAULT_CITATION_WINDOW):
    """(doc positions, n, r) for the citable documents of the census year."""
    citing = np.flatnonzero(corpus.doc_citable & (corpus.doc_year == census_year))
    n = np.bincount(corpus.ref_citing, minlength=corpus.document_count)
    counted = windowed_indexed_mask(corpus, corpus.ref_cited, census_year, citation_window)
    r = np.bincount(corpus.ref_citing[counted], minlength=corpus.document_count)
    return citing, n[citing], r[citing]


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise BenchmarkConstructionError(message)


def _field_spec(**values: Any) -> FieldSpec:
    try:
        return FieldSpec(**values)
    except ValidationError as exc:
        raise SynthError(str(exc)) from None


def _field_prefix(corpus: Corpus, positions: np.ndarray, prefix: str) -> np.ndarray:
    return np.array([corpus.doc_ids[pos].startswith(prefix) for pos in positions.tolist()], dtype=bool)


def two_field_benchmark(
    density_low: int = 10,
    density_high: int = 50,
    seed: int = 0,
    *,
    journal_count: int = 4,
    papers_per_journal_per_year: int = 5,
    census_year: int = DEFAULT_CENSUS_YEAR,
) -> Corpus:
    """
    Two isomorphic fields, "low" and "high", whose census-year documents carry
    density_low and density_high references, all in-window and indexed.
    """

    if density_low <= 0 or density_high <= 0:
        raise SynthError(f"densities must be positive, got {density_low} and {density_high}")
    fields = []
    for field_id, density in (("low", density_low), ("high", density_high)):
        spec = _field_spec(
            field_id=field_id,
            journal_count=journal_count,
            papers_per_journal_per_year=papers_per_journal_per_year,
            years=(census_year - DEFAULT_CITATION_WINDOW, census_year),
            refs_per_paper=density,
            in_window_share=1.0,
            indexed_share=1.0,
            citation_concentration=CitationConcentration.BALANCED,
            seed=seed,
        )
        fields.append(generate_field(spec))
    corpus = assemble(fields)

    citing, n, r = census_profiles(corpus, census_year)
    low = _field_prefix(corpus, citing, "low-")
    _check(bool(np.all(n[low] == density_low) and np.all(r[low] == density_low)), "low field densities differ")
    _check(bool(np.all(n[~low] == density_high) and np.all(r[~low] == density_high)), "high field densities differ")
    _check(fields[0].document_count == fields[1].document_count, "fields are not isomorphic")
    received = np.bincount(corpus.doc_journal[corpus.ref_cited], minlength=corpus.journal_count)
    _check(
        bool(np.all(received[:journal_count] == received[0]) and np.all(received[journal_count:] == received[journal_count])),
        "citations are not spread evenly over journals",
    )
    return corpus


def coverage_benchmark(
    indexed_share: float,
    seed: int = 0,
    *,
    resolved_refs: int = 10,
    journal_count: int = 4,
    papers_per_journal_per_year: int = 5,
    census_year: int = DEFAULT_CENSUS_YEAR,
) -> Corpus:
    """
    One field whose census documents each hold resolved_refs in-window indexed
    references plus unresolved ones, so that resolved_refs / n = indexed_share.
    The resolved part does not depend on the share.
    """

    if not 0 < indexed_share <= 1:
        raise SynthError(f"indexed_share must be in (0, 1], got {indexed_share}")
    total = int(round(resolved_refs / indexed_share))
    spec = _field_spec(
        field_id="coverage",
        journal_count=journal_count,
        papers_per_journal_per_year=papers_per_journal_per_year,
        years=(census_year - DEFAULT_CITATION_WINDOW, census_year),
        refs_per_paper=total,
        in_window_share=1.0,
        indexed_share=resolved_refs / total,
        citation_concentration=CitationConcentration.BALANCED,
        seed=seed,
    )
    corpus = generate_field(spec)
    _, n, r = census_profiles(corpus, census_year)
    _check(bool(np.all(r == resolved_refs)), "resolved in-window count is not fixed")
    _check(bool(np.all(n == total)), "reference list length is not fixed")
    return corpus


def immediacy_benchmark(
    old_ref_extra: int,
    seed: int = 0,
    *,
    base_refs: int = 10,
    journal_count: int = 4,
    papers_per_journal_per_year: int = 5,
    census_year: int = DEFAULT_CENSUS_YEAR,
) -> Corpus:
    """
    One field whose census documents each hold base_refs in-window references
    plus old_ref_extra resolved references to papers older than the window.
    """

    if old_ref_extra < 0:
        raise SynthError(f"old_ref_extra must be >= 0, got {old_ref_extra}")
    spec = _field_spec(
        field_id="immediacy",
        journal_count=journal_count,
        papers_per_journal_per_year=papers_per_journal_per_year,
        years=(census_year - 10, census_year),
        refs_per_paper=base_refs,
        in_window_share=1.0,
        indexed_share=1.0,
        citation_concentration=CitationConcentration.BALANCED,
        seed=seed,
        old_refs_per_paper=old_ref_extra,
    )
    corpus = generate_field(spec)
    _, n, r = census_profiles(corpus, census_year)
    _check(bool(np.all(r == base_refs)), "in-window count changed")
    _check(bool(np.all(n == base_refs + old_ref_extra)), "reference list length is not base + extra")
    return corpus


def zero_r_benchmark(
    seed: int = 0,
    *,
    journal_count: int = 3,
    papers_per_journal_per_year: int = 6,
    refs_per_paper: int = 6,
    census_year: int = DEFAULT_CENSUS_YEAR,
) -> Corpus:
    """
    Indexed journals plus one non-indexed journal "zr-x". Every census
    document cites a window paper of zr-x; one third cite nothing else, so
    they sit in zr-x's subject field with r = 0.
    """

    census_docs = journal_count * papers_per_journal_per_year
    if census_docs % 3:
        raise SynthError("journal_count * papers_per_journal_per_year must be divisible by 3")
    rng = np.random.Generator(np.random.PCG64(sub_seed("zr", seed, "zero_r")))
    first_year = census_year - DEFAULT_CITATION_WINDOW

    journals = [JournalRecord(journal_id=f"zr-j{j:03d}") for j in range(journal_count)]
    journals.append(JournalRecord(journal_id="zr-x", indexed=False))
    documents = []
    window_papers: list[str] = []
    for j in range(journal_count):
        for year in range(first_year, census_year + 1):
            for p in range(papers_per_journal_per_year):
                doc_id = f"zr-j{j:03d}-{year}-{p:04d}"
                documents.append(DocumentRecord(doc_id=doc_id, journal_id=f"zr-j{j:03d}", pub_year=year))
                if year < census_year:
                    window_papers.append(doc_id)
    x_papers = []
    for year in range(first_year, census_year):
        for p in range(papers_per_journal_per_year):
            doc_id = f"zr-x-{year}-{p:04d}"
            documents.append(DocumentRecord(doc_id=doc_id, journal_id="zr-x", pub_year=year))
            x_papers.append(doc_id)
    if not 0 < refs_per_paper <= len(window_papers):
        raise InfeasibleSpecError(
            f"refs_per_paper must be between 1 and the {len(window_papers)} indexed window papers, got {refs_per_paper}"
        )

    citing = [d.doc_id for d in documents if d.pub_year == census_year]
    silent = set(rng.choice(len(citing), size=census_docs // 3, replace=False).tolist())
    references = []
    for position, doc_id in enumerate(citing):
        references.append(ReferenceRecord(citing_doc_id=doc_id, cited_doc_id=x_papers[int(rng.integers(len(x_papers)))]))
        if position in silent:
            continue
        for target in rng.choice(len(window_papers), size=refs_per_paper, replace=False).tolist():
            references.append(ReferenceRecord(citing_doc_id=doc_id, cited_doc_id=window_papers[target]))

    corpus = Corpus.from_records(journals, documents, references)
    positions, _, r = census_profiles(corpus, census_year)
    zero = int(np.count_nonzero(r == 0))
    _check(zero * 3 == positions.size, f"expected one third zero-r members, got {zero}/{positions.size}")
    _check(bool(np.all(r[r > 0] == refs_per_paper)), "non-zero members do not share r")
    return corpus


@dataclass(frozen=True)
class Benchmark:
    name: str
    build: Callable[..., Corpus]
    parameters: tuple[tuple[str, type], ...]
    census_year: Callable[[dict[str, Any]], int] = lambda params: int(params.get("census_year", DEFAULT_CENSUS_YEAR))

    def bind(self, values: Sequence[str]) -> dict[str, Any]:
        """Positional values in declared order, or name=value pairs."""
        names = dict(self.parameters)
        bound: dict[str, Any] = {}
        positional = [value for value in values if "=" not in value]
        if len(positional) > len(self.parameters):
            raise SynthError(f"{self.name} takes at most {len(self.parameters)} positional parameters")
        for (name, kind), value in zip(self.parameters, positional):
            bound[name] = _coerce(name, kind, value)
        for item in values:
            if "=" not in item:
                continue
            name, _, value = item.partition("=")
            name = name.strip()
            if name not in names:
                raise SynthError(f"{self.name} has no parameter {name}")
            bound[name] = _coerce(name, names[name], value.strip())
        return bound


def _coerce(name: str, kind: type, value: str) -> Any:
    try:
        return kind(value)
    except ValueError:
        raise SynthError(f"{name} must be {kind.__name__}, got {value!r}") from None


def _field_benchmark(seed: int = 0, **values: Any) -> Corpus:
    if "years" in values and isinstance(values["years"], str):
        first, _, last = values["years"].partition("-")
        try:
            values["years"] = (int(first), int(last))
        except ValueError:
            raise SynthError(f"years must look like 1998-2007, got {values['years']!r}") from None
    return generate_field(_field_spec(seed=seed, **values))


_COMMON = (
    ("journal_count", int),
    ("papers_per_journal_per_year", int),
    ("census_year", int),
)

BENCHMARKS: dict[str, Benchmark] = {
    "two_field": Benchmark(
        "two_field", two_field_benchmark, (("density_low", int), ("density_high", int)) + _COMMON
    ),
    "coverage": Benchmark(
        "coverage", coverage_benchmark, (("indexed_share", float), ("resolved_refs", int)) + _COMMON
    ),
    "immediacy": Benchmark(
        "immediacy", immediacy_benchmark, (("old_ref_extra", int), ("base_refs", int)) + _COMMON
    ),
    "zero_r": Benchmark("zero_r", zero_r_benchmark, (("refs_per_paper", int),) + _COMMON),
    "field": Benchmark(
        "field",
        _field_benchmark,
        (
            ("field_id", str),
            ("journal_count", int),
            ("papers_per_journal_per_year", int),
            ("years", str),
            ("refs_per_paper", int),
            ("in_window_share", float),
            ("indexed_share", float),
            ("citation_concentration", str),
            ("citation_window", int),
            ("old_refs_per_paper", int),
        ),
        census_year=lambda params: int(str(params.get("years", "")).rpartition("-")[2] or DEFAULT_CENSUS_YEAR),
    ),
}


def get_benchmark(name: str) -> Benchmark:
    try:
        return BENCHMARKS[name]
    except KeyError:
        raise SynthError(f"Unknown benchmark: {name} (expected one of {', '.join(sorted(BENCHMARKS))})") from None


def write_benchmark(name: str, values: Sequence[str], seed: int, out_dir: str | Path) -> list[Path]:
    """Build a benchmark, save it in the corpus file format and add a manifest."""

    benchmark = get_benchmark(name)
    params = benchmark.bind(values)
    corpus = benchmark.build(seed=seed, **params)
    out_dir = Path(out_dir)
    paths = save_corpus(corpus, out_dir)
    manifest = {
        "benchmark": name,
        "parameters": params,
        "seed": seed,
        "census_year": benchmark.census_year(params),
        "corpus_sha256": corpus.content_hash(),
    }
    manifest_path = out_dir / MANIFEST_FILE
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(
        "Wrote benchmark name=%s seed=%s documents=%s references=%s directory=%s",
        name,
        seed,
        corpus.document_count,
        corpus.reference_count,
        out_dir,
    )
    return paths + [manifest_path]
