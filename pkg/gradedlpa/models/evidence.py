"""Oracle search windows and evidence records"""
import enum
from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field, model_validator

from gradedlpa.config import settings


class Outcome(str, enum.Enum):
    FOUND = "found"
    NONE = "none"
    INCONCLUSIVE = "inconclusive"


class SearchWindow(BaseModel):
    """Finite search region for brute-force oracles"""
    p: int = Field(..., ge=2, description="Prime of the coefficient field")
    degree_lo: int = Field(..., description="Lowest degree searched")
    degree_hi: int = Field(..., description="Highest degree searched")
    max_candidates: int = Field(default=200_000, ge=1, description="Candidate budget per search")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_nonempty(self) -> "SearchWindow":
        if self.degree_lo > self.degree_hi:
            raise ValueError("empty degree window")
        return self

    @classmethod
    def from_settings(cls, p: Optional[int] = None) -> "SearchWindow":
        lo, hi = settings.degree_window
        return cls(
            p=p or settings.oracle_prime,
            degree_lo=lo,
            degree_hi=hi,
            max_candidates=settings.oracle_max_candidates,
        )

    @property
    def degrees(self) -> range:
        return range(self.degree_lo, self.degree_hi + 1)


class EvidenceRecord(BaseModel):
    """One oracle search and its result"""
    ring: Dict = Field(..., description="Ring descriptor {base, n, m, shifts}")
    field: str = Field(..., description="Coefficient field label")
    kind: str = Field(..., description="clean, exchange or lift")
    x: List[List[str]] = Field(..., description="Element searched for, rendered entrywise")
    degree: Optional[int] = Field(..., description="Degree of x, None for zero")
    outcome: Outcome = Field(..., description="found, none or inconclusive")
    witness: Optional[Dict[str, List[List[str]]]] = Field(default=None, description="Witness matrices")
    candidates: int = Field(default=0, description="Candidates examined")

    def as_json(self) -> Dict:
        return {
            "ring": self.ring,
            "field": self.field,
            "kind": self.kind,
            "x": self.x,
            "degree": self.degree,
            "outcome": self.outcome.value,
            "witness": self.witness,
            "candidates": self.candidates,
        }
