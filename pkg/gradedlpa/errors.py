"""Exception hierarchy shared by the services and the CLI"""
from dataclasses import dataclass
from typing import Any, Optional


class GradedLpaError(Exception):
    """Root of all toolkit errors"""


class StructuralError(GradedLpaError, ValueError):
    """Operands do not fit together (different graphs, steps, fields, shapes)"""


class ContractViolation(GradedLpaError, ValueError):
    """A precondition of an operation does not hold"""


class NoConstructiveProcedure(ContractViolation):
    """No witness construction is known for this ring"""


class InvertibleMatrixError(ContractViolation):
    """Raised when 1 - a was asked for but a itself is invertible"""

    def __init__(self, message: str, inverse: Any):
        super().__init__(message)
        self.inverse = inverse


class InvariantViolation(GradedLpaError, RuntimeError):
    """A checked theorem-level invariant failed; always a bug or a counterexample"""


@dataclass(frozen=True)
class SourceLocation:
    """Position inside a DSL document"""
    line: int
    column: int
    source: Optional[str] = None

    def __str__(self) -> str:
        prefix = f"{self.source}:" if self.source else ""
        return f"{prefix}{self.line}:{self.column}"


class DSLSyntaxError(GradedLpaError, ValueError):
    """Graph or element text could not be parsed"""

    def __init__(self, message: str, location: Optional[SourceLocation] = None, hint: Optional[str] = None):
        self.message = message
        self.location = location
        self.hint = hint
        text = f"{location}: {message}" if location else message
        if hint:
            text = f"{text} ({hint})"
        super().__init__(text)
