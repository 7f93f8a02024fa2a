"""Parameters of one synthetic research field."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.corpus.windows import DEFAULT_CITATION_WINDOW


class SynthError(ValueError):
    pass


class InfeasibleSpecError(SynthError):
    pass


class BenchmarkConstructionError(SynthError):
    """A benchmark's advertised structural property does not hold."""


class CitationConcentration(str, Enum):
    UNIFORM = "uniform"
    PROPORTIONAL_TO_AGE = "proportional_to_age"
    # Round-robin over targets interleaved by journal; exact shares, no sampling noise.
    BALANCED = "balanced"


class FieldSpec(BaseModel):
    """
    One field: `journal_count` indexed journals each publishing
    `papers_per_journal_per_year` citable papers in every year of `years`.
    Only documents of the last year (the census year) carry references.

    Of each census document's `refs_per_paper` references, a share
    `indexed_share` resolves to field documents and the rest stay unresolved;
    of the resolved ones, a share `in_window_share` targets papers 1 to
    `citation_window` years old and the rest target older papers.
    `old_refs_per_paper` appends further resolved references to papers older
    than the citation window.
    """

    model_config = ConfigDict(frozen=True)

    field_id: str = Field(min_length=1)
    journal_count: int = Field(gt=0)
    papers_per_journal_per_year: int = Field(gt=0)
    years: tuple[int, int]
    refs_per_paper: int = Field(gt=0)
    in_window_share: float = Field(default=1.0, ge=0.0, le=1.0)
    indexed_share: float = Field(default=1.0, ge=0.0, le=1.0)
    citation_concentration: CitationConcentration = CitationConcentration.UNIFORM
    seed: int = Field(default=0, ge=0, lt=2**64)
    citation_window: int = Field(default=DEFAULT_CITATION_WINDOW, ge=1)
    old_refs_per_paper: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _ordered_years(self) -> "FieldSpec":
        first, last = self.years
        if first > last:
            raise ValueError(f"years must be ascending, got {first}-{last}")
        return self

    @property
    def census_year(self) -> int:
        return self.years[1]
