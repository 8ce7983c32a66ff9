"""Graded matrix ring descriptors"""
import enum
from typing import Any, Dict, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator


class BaseKind(str, enum.Enum):
    K = "k"
    LAURENT = "laurent"


class GradedMatrixRing(BaseModel):
    """M_n(R)(shifts) with R = K (trivially graded) or K[x^m, x^-m]"""
    n: int = Field(..., ge=1, description="Matrix size")
    base: BaseKind = Field(..., description="Base ring kind")
    m: Optional[int] = Field(default=None, ge=1, description="Laurent step, None for the field base")
    shifts: Tuple[int, ...] = Field(..., description="Shift vector (gamma_1, ..., gamma_n)")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_shape(self) -> "GradedMatrixRing":
        if len(self.shifts) != self.n:
            raise ValueError(f"{self.n}x{self.n} ring needs {self.n} shifts, got {len(self.shifts)}")
        if self.base == BaseKind.LAURENT and self.m is None:
            raise ValueError("Laurent base needs a step m")
        if self.base == BaseKind.K and self.m is not None:
            raise ValueError("field base takes no step")
        return self

    @classmethod
    def over_field(cls, shifts) -> "GradedMatrixRing":
        shifts = tuple(shifts)
        return cls(n=len(shifts), base=BaseKind.K, shifts=shifts)

    @classmethod
    def over_laurent(cls, m: int, shifts) -> "GradedMatrixRing":
        shifts = tuple(shifts)
        return cls(n=len(shifts), base=BaseKind.LAURENT, m=m, shifts=shifts)

    @classmethod
    def parse(cls, n: int, base: str, shifts: str) -> "GradedMatrixRing":
        """Read CLI flags: base 'k' or 'laurent:M', shifts 'a,b,...'"""
        values = tuple(int(s) for s in shifts.split(",") if s.strip())
        text = base.strip().lower()
        if text == "k":
            ring = cls.over_field(values)
        elif text.startswith("laurent:"):
            ring = cls.over_laurent(int(text[len("laurent:"):]), values)
        else:
            raise ValueError(f"unknown base {base!r}; use 'k' or 'laurent:M'")
        if ring.n != n:
            raise ValueError(f"--n {n} does not match {ring.n} shifts")
        return ring

    @property
    def is_laurent(self) -> bool:
        return self.base == BaseKind.LAURENT

    @property
    def step(self) -> int:
        """Step of the Laurent entries; constants of the field base use step 1"""
        return self.m if self.m is not None else 1

    def admits(self, exponent: int) -> bool:
        """Whether R has a nonzero component in this degree"""
        if self.is_laurent:
            return exponent % self.m == 0
        return exponent == 0

    def describe(self) -> Dict[str, Any]:
        return {"base": self.base.value, "n": self.n, "m": self.m, "shifts": list(self.shifts)}

    def label(self) -> str:
        inner = "K" if not self.is_laurent else f"K[x^{self.m},x^-{self.m}]"
        return f"M_{self.n}({inner})({','.join(str(s) for s in self.shifts)})"
