"""Run configuration: corpus paths, indicator parameters and output options."""

from __future__ import annotations

import configparser
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from app.corpus.io import (
    load_corpus,
    load_corpus_dir,
    load_corpus_jsonl,
    read_corpus,
    read_corpus_dir,
    read_corpus_jsonl,
)
from app.corpus.store import Corpus
from app.corpus.windows import DEFAULT_CITATION_WINDOW
from app.indicators.config import DEFAULT_FIELD_WINDOW, IndicatorConfig, ZeroRPolicy

SECTION = "run"

# INI keys in the order they are written.
KEYS = (
    "journals",
    "documents",
    "references",
    "corpus_dir",
    "jsonl",
    "census_year",
    "citation_window",
    "field_window",
    "zero_r_policy",
    "format",
    "out",
)
_SPLIT_KEYS = ("journals", "documents", "references")


class ConfigError(ValueError):
    pass


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    journals: Optional[Path] = None
    documents: Optional[Path] = None
    references: Optional[Path] = None
    corpus_dir: Optional[Path] = None
    jsonl: Optional[Path] = None
    census_year: Optional[int] = None
    citation_window: int = DEFAULT_CITATION_WINDOW
    field_window: int = DEFAULT_FIELD_WINDOW
    zero_r_policy: ZeroRPolicy = ZeroRPolicy.EXCLUDE
    format: Literal["table", "json"] = "table"
    out: Optional[Path] = None

    @field_validator("zero_r_policy", mode="before")
    @classmethod
    def _policy(cls, value: Any) -> ZeroRPolicy:
        return ZeroRPolicy.parse(value)

    @model_validator(mode="after")
    def _one_corpus_source(self) -> "RunConfig":
        split = [getattr(self, key) is not None for key in _SPLIT_KEYS]
        if any(split) and not all(split):
            raise ValueError("journals, documents and references must be given together")
        sources = sum([all(split), self.corpus_dir is not None, self.jsonl is not None])
        if sources > 1:
            raise ValueError("give only one of journals/documents/references, corpus_dir or jsonl")
        return self

    # ── construction ───────────────────────────────────────────────────

    @classmethod
    def build(cls, values: dict[str, Any]) -> "RunConfig":
        try:
            return cls(**{key: value for key, value in values.items() if value is not None})
        except ValidationError as exc:
            raise ConfigError(f"invalid run configuration: {exc}") from None

    @classmethod
    def from_ini(cls, path: str | Path, overrides: dict[str, Any] | None = None) -> "RunConfig":
        """Read the [run] section; non-None overrides (command-line flags) win."""
        parser = configparser.ConfigParser()
        with Path(path).open("r", encoding="utf-8") as handle:
            try:
                parser.read_file(handle)
            except configparser.Error as exc:
                raise ConfigError(f"{path}: {exc}") from None
        if not parser.has_section(SECTION):
            raise ConfigError(f"{path}: missing [{SECTION}] section")
        unknown = sorted(set(parser[SECTION]) - set(KEYS))
        if unknown:
            raise ConfigError(f"{path}: unknown keys: {', '.join(unknown)}")
        values: dict[str, Any] = {key: value for key, value in parser[SECTION].items() if value.strip()}
        values.update({key: value for key, value in (overrides or {}).items() if value is not None})
        return cls.build(values)

    def to_ini(self) -> str:
        lines = [f"[{SECTION}]"]
        for key in KEYS:
            value = getattr(self, key)
            if value is None:
                continue
            if isinstance(value, ZeroRPolicy):
                value = value.value
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"

    # ── use ────────────────────────────────────────────────────────────

    @property
    def has_corpus(self) -> bool:
        return self.journals is not None or self.corpus_dir is not None or self.jsonl is not None

    def indicator_config(self) -> IndicatorConfig:
        if self.census_year is None:
            raise ConfigError("census_year is required")
        try:
            return IndicatorConfig(
                census_year=self.census_year,
                citation_window=self.citation_window,
                field_window=self.field_window,
            )
        except ValidationError as exc:
            raise ConfigError(f"invalid indicator configuration: {exc}") from None

    def _require_corpus(self) -> None:
        if not self.has_corpus:
            raise ConfigError("no corpus given: use --journals/--documents/--references, --corpus-dir or --jsonl")

    def read_corpus(self) -> Corpus:
        """Parsed corpus, invariants unchecked."""
        self._require_corpus()
        if self.corpus_dir is not None:
            return read_corpus_dir(self.corpus_dir)
        if self.jsonl is not None:
            return read_corpus_jsonl(self.jsonl)
        return read_corpus(self.journals, self.documents, self.references)

    def load_corpus(self) -> Corpus:
        self._require_corpus()
        if self.corpus_dir is not None:
            return load_corpus_dir(self.corpus_dir)
        if self.jsonl is not None:
            return load_corpus_jsonl(self.jsonl)
        return load_corpus(self.journals, self.documents, self.references)
