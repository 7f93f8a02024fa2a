"""Internal data contract for corpus ingestion."""

from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Years are stored as int64; the configured bounds are checked by validate().
# Unresolved cited years are non-negative so -1 can mark "no year".
YEAR_LIMIT = 2**31 - 1


class DocType(str, Enum):
    CITABLE = "citable"
    NON_CITABLE = "non_citable"


class JournalRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    journal_id: str
    title: str = ""
    indexed: bool = True

    @field_validator("journal_id")
    @classmethod
    def _non_blank_id(cls, value: str) -> str:
        value = value.strip()
        if not value:
            raise ValueError("journal_id must not be empty")
        return value


class DocumentRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    doc_id: str
    journal_id: str
    pub_year: int = Field(ge=-YEAR_LIMIT, le=YEAR_LIMIT)
    doc_type: DocType = DocType.CITABLE

    @field_validator("doc_id", "journal_id")
    @classmethod
    def _non_blank_id(cls, value: str) -> str:
        value = value.strip()
        if not value:
            raise ValueError("identifier must not be empty")
        return value

    @property
    def citable(self) -> bool:
        return self.doc_type is DocType.CITABLE


class ReferenceRecord(BaseModel):
    """
    A citation edge. A non-empty cited_doc_id makes the reference resolved;
    otherwise it points outside the corpus and may carry the cited year.
    """

    model_config = ConfigDict(frozen=True)

    citing_doc_id: str
    cited_doc_id: Optional[str] = None
    cited_year: Optional[int] = Field(default=None, ge=0, le=YEAR_LIMIT)

    @field_validator("citing_doc_id")
    @classmethod
    def _non_blank_citing(cls, value: str) -> str:
        value = value.strip()
        if not value:
            raise ValueError("citing_doc_id must not be empty")
        return value

    @field_validator("cited_doc_id", mode="before")
    @classmethod
    def _blank_to_none(cls, value):
        if isinstance(value, str):
            value = value.strip()
            return value or None
        return value

    @model_validator(mode="after")
    def _one_target_kind(self) -> "ReferenceRecord":
        if self.cited_doc_id is not None and self.cited_year is not None:
            raise ValueError("resolved references must leave cited_year empty")
        return self


class CitingProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    doc_id: str
    n_total: int
    r_windowed_indexed: int
