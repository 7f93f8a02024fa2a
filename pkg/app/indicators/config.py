"""Computation parameters shared by every indicator."""

from __future__ import annotations

from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.corpus.windows import DEFAULT_CITATION_WINDOW, window_years

DEFAULT_FIELD_WINDOW = 10


class ZeroRPolicy(str, Enum):
    """How 1/r fractional counting treats citing documents with r = 0."""

    EXCLUDE = "exclude"
    UNDEFINED_ON_ANY_ZERO = "undefined_on_any_zero"

    @classmethod
    def parse(cls, value: "str | ZeroRPolicy") -> "ZeroRPolicy":
        if isinstance(value, ZeroRPolicy):
            return value
        normalized = str(value).strip().lower()
        if normalized == "undefined":
            return cls.UNDEFINED_ON_ANY_ZERO
        try:
            return cls(normalized)
        except ValueError:
            raise ValueError(
                f"zero_r_policy must be exclude or undefined, got {value!r}"
            ) from None


class IndicatorConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    census_year: int
    citation_window: int = Field(default=DEFAULT_CITATION_WINDOW, ge=1)
    field_window: int = Field(default=DEFAULT_FIELD_WINDOW, ge=1)
    median_method: Literal["midpoint_average"] = "midpoint_average"

    @model_validator(mode="after")
    def _field_covers_citation_window(self) -> "IndicatorConfig":
        if self.field_window < self.citation_window:
            raise ValueError(
                f"field_window ({self.field_window}) must be >= citation_window ({self.citation_window})"
            )
        return self

    @property
    def citation_years(self) -> tuple[int, int]:
        """Publication years counted for both RIP citations and r."""
        return window_years(self.census_year, self.citation_window)

    @property
    def field_years(self) -> tuple[int, int]:
        return window_years(self.census_year, self.field_window)
