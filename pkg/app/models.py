from sqlalchemy import Boolean, Column, DateTime, Float, ForeignKey, Integer, String, Text, UniqueConstraint
from sqlalchemy.orm import relationship
from sqlalchemy.sql import func

from .db import Base


class IndicatorRun(Base):
    __tablename__ = "indicator_runs"
    __table_args__ = (
        UniqueConstraint("corpus_sha256", "config_sha256", name="uq_indicator_runs_corpus_config"),
    )

    id = Column(Integer, primary_key=True, index=True)
    corpus_sha256 = Column(String(64), nullable=False)
    config_sha256 = Column(String(64), nullable=False)
    config_json = Column(Text, nullable=False, default="")
    census_year = Column(Integer, nullable=False)
    citation_window = Column(Integer, nullable=False)
    field_window = Column(Integer, nullable=False)
    median_method = Column(String, nullable=False, default="midpoint_average")
    zero_r_policy = Column(String, nullable=False, default="exclude")
    median_cp = Column(Float, nullable=True)
    median_cp_reason = Column(String, nullable=True)
    journal_count = Column(Integer, nullable=False, default=0)
    created_at = Column(DateTime(timezone=True), server_default=func.now())
    updated_at = Column(
        DateTime(timezone=True),
        server_default=func.now(),
        onupdate=func.now(),
    )

    journals = relationship(
        "JournalIndicator",
        back_populates="run",
        cascade="all, delete-orphan",
        order_by="JournalIndicator.journal_id",
    )


class JournalIndicator(Base):
    __tablename__ = "journal_indicators"
    __table_args__ = (
        UniqueConstraint("run_id", "journal_id", name="uq_journal_indicators_run_journal"),
    )

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("indicator_runs.id", ondelete="CASCADE"), nullable=False, index=True)
    journal_id = Column(String, nullable=False)
    indexed = Column(Boolean, nullable=False, default=True)
    paper_count = Column(Integer, nullable=False, default=0)
    citation_count = Column(Integer, nullable=False, default=0)
    rip = Column(Float, nullable=True)
    subject_field_size = Column(Integer, nullable=False, default=0)
    cp = Column(Float, nullable=True)
    rdcp = Column(Float, nullable=True)
    snip = Column(Float, nullable=True)
    fcc_total = Column(Float, nullable=True)
    fcc_windowed = Column(Float, nullable=True)
    zero_r_count = Column(Integer, nullable=False, default=0)
    zero_r_share = Column(Float, nullable=True)
    nonzero_r_mean = Column(Float, nullable=True)
    excluded_citations = Column(Integer, nullable=False, default=0)
    reasons_json = Column(Text, nullable=False, default="{}")

    run = relationship("IndicatorRun", back_populates="journals")
