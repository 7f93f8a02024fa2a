from datetime import datetime
from typing import Optional

from pydantic import BaseModel


class RunOut(BaseModel):
    id: int
    corpus_sha256: str
    config_sha256: str
    census_year: int
    citation_window: int
    field_window: int
    median_method: str
    zero_r_policy: str
    median_cp: Optional[float]
    median_cp_reason: Optional[str]
    journal_count: int
    created_at: Optional[datetime]
    updated_at: Optional[datetime]

    class Config:
        from_attributes = True


class JournalIndicatorOut(BaseModel):
    journal_id: str
    indexed: bool
    paper_count: int
    citation_count: int
    rip: Optional[float]
    subject_field_size: int
    cp: Optional[float]
    rdcp: Optional[float]
    snip: Optional[float]
    fcc_total: Optional[float]
    fcc_windowed: Optional[float]
    zero_r_count: int
    zero_r_share: Optional[float]
    nonzero_r_mean: Optional[float]
    excluded_citations: int
    reasons: dict[str, str]


class RunDetailOut(BaseModel):
    run: RunOut
    journals: list[JournalIndicatorOut]


class RankedJournalOut(BaseModel):
    rank: int
    journal_id: str
    value: Optional[float]


class RankingOut(BaseModel):
    run_id: int
    key: str
    journals: list[RankedJournalOut]


class ComparisonRowOut(BaseModel):
    journal_id: str
    values: dict[str, Optional[float]]
    ranks: dict[str, int]
    zero_r_count: int
    zero_r_share: Optional[float]
    rank_changes: list[str]


class ComparisonOut(BaseModel):
    run_id: int
    journals: list[ComparisonRowOut]
