"""Corpus error hierarchy."""

from __future__ import annotations

from pathlib import Path


class CorpusError(ValueError):
    pass


class CorpusParseError(CorpusError):
    def __init__(self, path: str | Path, line: int, message: str) -> None:
        self.path = str(path)
        self.line = line
        self.message = message
        super().__init__(f"{self.path}:{line}: {message}")


class DanglingIdentifierError(CorpusError):
    pass


class DuplicateIdentifierError(CorpusError):
    pass


class SelfCitationError(CorpusError):
    pass


class InvalidYearError(CorpusError):
    pass


class UnknownJournalError(CorpusError, LookupError):
    pass


class UnknownDocumentError(CorpusError, LookupError):
    pass
