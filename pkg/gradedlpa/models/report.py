"""Verdict and property report models"""
import enum
from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field


class VerdictValue(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


class Verdict(BaseModel):
    """Three-valued answer with the rule that produced it"""
    value: VerdictValue = Field(..., description="Yes, No or Unknown")
    citation: str = Field(..., description="Key of the rule applied")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def yes(cls, citation: str) -> "Verdict":
        return cls(value=VerdictValue.YES, citation=citation)

    @classmethod
    def no(cls, citation: str) -> "Verdict":
        return cls(value=VerdictValue.NO, citation=citation)

    @classmethod
    def unknown(cls, citation: str) -> "Verdict":
        return cls(value=VerdictValue.UNKNOWN, citation=citation)

    @classmethod
    def of(cls, flag: bool, citation: str) -> "Verdict":
        return cls.yes(citation) if flag else cls.no(citation)

    def as_json(self) -> Dict[str, str]:
        return {"verdict": self.value.value, "citation": self.citation}


# Report order: ungraded, graded, zero-component versions
PROPERTY_NAMES: List[str] = [
    "Reg", "UR", "sr=1", "DF", "Cln", "Exch",
    "Reg_gr", "UR_gr", "sr=1_gr", "DF_gr", "Cln_gr", "Exch_gr",
    "Reg_eps", "UR_eps", "sr=1_eps", "DF_eps", "Cln_eps", "Exch_eps",
]


class PropertyReport(BaseModel):
    """Verdicts for one graph's Leavitt path algebra"""
    vertices: int = Field(..., description="Number of vertices")
    edges: int = Field(..., description="Number of edges")
    unital: bool = Field(..., description="Finitely many vertices, so L_K(E) is unital")
    row_finite: bool = Field(default=True, description="Every stored graph is row-finite")
    properties: Dict[str, Verdict] = Field(..., description="Verdict per property name")
    decomposition: Optional[List[Dict]] = Field(
        default=None,
        description="Graded matrix summands, present for no-exit graphs"
    )

    def verdict(self, name: str) -> VerdictValue:
        return self.properties[name].value

    def unknowns(self) -> List[str]:
        return [name for name in PROPERTY_NAMES if self.properties[name].value == VerdictValue.UNKNOWN]

    def as_json(self, schema_version: int) -> Dict:
        return {
            "schema_version": schema_version,
            "graph": {"vertices": self.vertices, "edges": self.edges},
            "unital": self.unital,
            "row_finite": self.row_finite,
            "properties": {name: self.properties[name].as_json() for name in PROPERTY_NAMES},
            "decomposition": self.decomposition,
        }
