"""indicator runs

Revision ID: 20261018000100
Revises: 
Create Date: 2026-10-18 00:01:00.000000

"""
from alembic import op
import sqlalchemy as sa

# revision identifiers, used by Alembic.
revision = "20261018000100"
down_revision = None
branch_labels = None
depends_on = None


def upgrade() -> None:
    op.create_table(
        "indicator_runs",
        sa.Column("id", sa.Integer(), primary_key=True, nullable=False),
        sa.Column("corpus_sha256", sa.String(length=64), nullable=False),
        sa.Column("config_sha256", sa.String(length=64), nullable=False),
        sa.Column("config_json", sa.Text(), nullable=False),
        sa.Column("census_year", sa.Integer(), nullable=False),
        sa.Column("citation_window", sa.Integer(), nullable=False),
        sa.Column("field_window", sa.Integer(), nullable=False),
        sa.Column("median_method", sa.String(), nullable=False),
        sa.Column("zero_r_policy", sa.String(), nullable=False),
        sa.Column("median_cp", sa.Float(), nullable=True),
        sa.Column("median_cp_reason", sa.String(), nullable=True),
        sa.Column("journal_count", sa.Integer(), nullable=False),
        sa.Column(
            "created_at",
            sa.DateTime(timezone=True),
            server_default=sa.text("CURRENT_TIMESTAMP"),
            nullable=True,
        ),
        sa.Column(
            "updated_at",
            sa.DateTime(timezone=True),
            server_default=sa.text("CURRENT_TIMESTAMP"),
            nullable=True,
        ),
        sa.UniqueConstraint("corpus_sha256", "config_sha256", name="uq_indicator_runs_corpus_config"),
    )
    op.create_index("ix_indicator_runs_id", "indicator_runs", ["id"], unique=False)

    op.create_table(
        "journal_indicators",
        sa.Column("id", sa.Integer(), primary_key=True, nullable=False),
        sa.Column(
            "run_id",
            sa.Integer(),
            sa.ForeignKey("indicator_runs.id", ondelete="CASCADE"),
            nullable=False,
        ),
        sa.Column("journal_id", sa.String(), nullable=False),
        sa.Column("indexed", sa.Boolean(), nullable=False),
        sa.Column("paper_count", sa.Integer(), nullable=False),
        sa.Column("citation_count", sa.Integer(), nullable=False),
        sa.Column("rip", sa.Float(), nullable=True),
        sa.Column("subject_field_size", sa.Integer(), nullable=False),
        sa.Column("cp", sa.Float(), nullable=True),
        sa.Column("rdcp", sa.Float(), nullable=True),
        sa.Column("snip", sa.Float(), nullable=True),
        sa.Column("fcc_total", sa.Float(), nullable=True),
        sa.Column("fcc_windowed", sa.Float(), nullable=True),
        sa.Column("zero_r_count", sa.Integer(), nullable=False),
        sa.Column("zero_r_share", sa.Float(), nullable=True),
        sa.Column("nonzero_r_mean", sa.Float(), nullable=True),
        sa.Column("excluded_citations", sa.Integer(), nullable=False),
        sa.Column("reasons_json", sa.Text(), nullable=False),
        sa.UniqueConstraint("run_id", "journal_id", name="uq_journal_indicators_run_journal"),
    )
    op.create_index("ix_journal_indicators_id", "journal_indicators", ["id"], unique=False)
    op.create_index("ix_journal_indicators_run_id", "journal_indicators", ["run_id"], unique=False)


def downgrade() -> None:
    op.drop_index("ix_journal_indicators_run_id", table_name="journal_indicators")
    op.drop_index("ix_journal_indicators_id", table_name="journal_indicators")
    op.drop_table("journal_indicators")
    op.drop_index("ix_indicator_runs_id", table_name="indicator_runs")
    op.drop_table("indicator_runs")
