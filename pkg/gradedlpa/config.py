"""Configuration management using Pydantic Settings"""
from typing import Optional, Tuple
from pydantic_settings import BaseSettings
from pydantic import Field, field_validator


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix GL_)"""

    # Logging
    debug: bool = Field(default=False, description="Debug mode (INFO logging)")
    log_level: Optional[str] = Field(
        default=None,
        description="Explicit log level, overrides the debug switch"
    )

    # Oracle searches
    oracle_window: str = Field(
        default="-2,2",
        description="Degree window 'lo,hi' for brute-force searches (GL_ORACLE_WINDOW)"
    )
    oracle_prime: int = Field(default=2, description="Default prime for oracle enumeration")
    oracle_max_candidates: int = Field(
        default=200_000,
        description="Candidate budget per search; exhausting it yields an inconclusive outcome"
    )

    # Nonunital calculus
    unitization_window: int = Field(
        default=3,
        description="Integer window {-N..N} searched in the standard unitization"
    )
    ring_axiom_check_limit: int = Field(
        default=128,
        description="Carrier size above which ring axioms are checked on a sample"
    )

    # Reports
    report_schema_version: int = Field(default=1, description="PropertyReport JSON schema version")
    json_indent: int = Field(default=2, description="Indentation of emitted JSON")
    graded_dimension_bound: int = Field(
        default=3,
        description="Degrees -B..B compared by the graded-dimension audit"
    )

    @field_validator("oracle_window")
    @classmethod
    def _check_window(cls, value: str) -> str:
        parse_window(value)
        return value

    @property
    def degree_window(self) -> Tuple[int, int]:
        return parse_window(self.oracle_window)

    class Config:
        env_prefix = "GL_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"


def parse_window(text: str) -> Tuple[int, int]:
    """Parse a 'lo,hi' degree window"""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"degree window must look like 'lo,hi', got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"degree window bounds must be integers, got {text!r}")
    if lo > hi:
        raise ValueError(f"empty degree window {text!r}")
    return lo, hi


# Global settings instance
settings = Settings()
