"""
FIBRA - Configuration Management
Centralized configuration using pydantic-settings.
"""

from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix FIBRA_)."""

    PROJECT_ROOT: Path = Path(__file__).resolve().parent.parent

    # Backtracking searches (trivializations, isomorphisms) stop after this many nodes
    SEARCH_BUDGET: int = 10_000_000
    # --dump-opens refuses spaces larger than this
    DUMP_OPENS_MAX_POINTS: int = 12
    # Threads used by classify for bundle construction and class merging
    CLASSIFY_WORKERS: int = 1

    DEFAULT_SEED: int = 0
    PROPERTY_TRIALS: int = 200
    PROPERTY_MAX_BASE: int = 5
    PROPERTY_MAX_FIBER: int = 4

    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[Path] = None

    model_config = SettingsConfigDict(
        env_prefix="FIBRA_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()


COMMANDS: List[str] = [
    "check", "groth", "classify", "canrep", "iso",
    "pullback", "verify", "examples", "properties",
]
FORMATS: List[str] = ["table", "document"]


class JobConfig(BaseModel):
    """One CLI invocation: command, inputs, output and search limits."""

    command: str
    inputs: List[Path] = Field(default_factory=list)
    out: Optional[Path] = None
    format: str = "table"
    budget: int = settings.SEARCH_BUDGET
    seed: int = settings.DEFAULT_SEED
    example: Optional[str] = None

    @field_validator("command")
    @classmethod
    def _known_command(cls, v: str) -> str:
        if v not in COMMANDS:
            raise ValueError(f"unknown command {v!r}; expected one of {', '.join(COMMANDS)}")
        return v

    @field_validator("format")
    @classmethod
    def _known_format(cls, v: str) -> str:
        if v not in FORMATS:
            raise ValueError(f"unknown format {v!r}; expected table or document")
        return v

    @field_validator("budget")
    @classmethod
    def _positive_budget(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("budget must be a positive integer")
        return v
