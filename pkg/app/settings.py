from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

DEFAULT_DATABASE_URL = "sqlite:///data/snip.db"


@dataclass(frozen=True)
class Settings:
    database_url: str
    min_pub_year: int
    max_pub_year: int
    log_level: str

    @property
    def year_bounds(self) -> tuple[int, int]:
        return self.min_pub_year, self.max_pub_year


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def load_settings() -> Settings:
    settings = Settings(
        database_url=os.getenv("SNIP_DATABASE_URL", DEFAULT_DATABASE_URL),
        min_pub_year=_env_int("SNIP_MIN_YEAR", 1800),
        max_pub_year=_env_int("SNIP_MAX_YEAR", 2100),
        log_level=os.getenv("SNIP_LOG_LEVEL", "INFO").upper(),
    )
    if settings.min_pub_year > settings.max_pub_year:
        raise ValueError("SNIP_MIN_YEAR must not exceed SNIP_MAX_YEAR")
    return settings


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
