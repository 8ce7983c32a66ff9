"""Exact coefficient arithmetic: fields Q and F_p, and the graded Laurent ring K[x^m, x^-m]"""
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from sympy import isprime
from sympy.polys.domains import QQ, FF
from sympy.polys.polyerrors import NotReversible

from gradedlpa.errors import StructuralError

logger = logging.getLogger(__name__)

Scalar = Any
ScalarLike = Union[int, str, Fraction, Scalar]


class Field:
    """An exact field: the rationals (characteristic 0) or a prime field F_p.

    Elements are sympy domain elements, so arithmetic on them is exact and
    uses the ordinary operators.
    """

    __slots__ = ("characteristic", "domain")

    def __init__(self, characteristic: int = 0):
        if characteristic == 0:
            self.domain = QQ
        else:
            if characteristic < 2 or not isprime(characteristic):
                raise StructuralError(f"F_p needs a prime p, got {characteristic}")
            self.domain = FF(characteristic, symmetric=False)
        self.characteristic = characteristic

    @classmethod
    def parse(cls, descriptor: str) -> "Field":
        """Read 'q' or 'fp:P'"""
        text = descriptor.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(0)
        if text.startswith("fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError:
                raise StructuralError(f"bad prime in field descriptor {descriptor!r}")
        raise StructuralError(f"unknown field {descriptor!r}; use 'q' or 'fp:P'")

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def label(self) -> str:
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def __call__(self, value: ScalarLike) -> Scalar:
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            return self.div(self.domain(value.numerator), self.domain(value.denominator))
        if isinstance(value, int):
            return self.domain(value)
        if self.domain.of_type(value):
            return value
        raise StructuralError(f"cannot read {value!r} as an element of {self.label}")

    def is_zero(self, a: Scalar) -> bool:
        return self.domain.is_zero(a)

    def inv(self, a: Scalar) -> Scalar:
        try:
            return self.domain.revert(a)
        except (NotReversible, ZeroDivisionError):
            raise ZeroDivisionError(f"zero has no inverse in {self.label}")

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return a * self.inv(b)

    def elements(self) -> List[Scalar]:
        """All elements of a finite field in residue order"""
        if not self.is_finite:
            raise StructuralError("the rationals cannot be enumerated")
        return [self.domain(k) for k in range(self.characteristic)]

    def residue(self, a: Scalar) -> int:
        return int(a) % self.characteristic

    def render(self, a: Scalar) -> str:
        if self.is_finite:
            return str(self.residue(a))
        num, den = self.domain.numer(a), self.domain.denom(a)
        return str(num) if den == 1 else f"{num}/{den}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __repr__(self) -> str:
        return f"Field({self.label})"


class LaurentPoly:
    """Element of K[x^m, x^-m] stored sparse as {k: c} for the term c*x^(k*m).

    Zero coefficients are never stored, so the zero polynomial is the empty
    map. The constant polynomials double as the trivially graded field K.
    """

    __slots__ = ("field", "step", "_terms", "_hash")

    def __init__(self, field: Field, step: int = 1, terms: Optional[Mapping[int, ScalarLike]] = None):
        if step < 1:
            raise StructuralError(f"Laurent step must be positive, got {step}")
        self.field = field
        self.step = step
        cleaned: Dict[int, Scalar] = {}
        for k, c in (terms or {}).items():
            value = field(c)
            if not field.is_zero(value):
                cleaned[int(k)] = value
        self._terms = cleaned
        self._hash: Optional[int] = None

    # Constructors

    @classmethod
    def zero(cls, field: Field, step: int = 1) -> "LaurentPoly":
        return cls(field, step)

    @classmethod
    def one(cls, field: Field, step: int = 1) -> "LaurentPoly":
        return cls(field, step, {0: field.one})

    @classmethod
    def constant(cls, field: Field, value: ScalarLike, step: int = 1) -> "LaurentPoly":
        return cls(field, step, {0: value})

    @classmethod
    def monomial(cls, field: Field, exponent: int, coeff: ScalarLike = 1, step: int = 1) -> "LaurentPoly":
        """c * x^exponent; the exponent must be a multiple of the step"""
        if exponent % step:
            raise StructuralError(f"x^{exponent} is not in K[x^{step}, x^-{step}]")
        return cls(field, step, {exponent // step: coeff})

    # Structure

    def terms(self) -> Dict[int, Scalar]:
        """Map exponent -> coefficient"""
        return {k * self.step: c for k, c in sorted(self._terms.items())}

    def support(self) -> List[int]:
        return [k * self.step for k in sorted(self._terms)]

    def coefficient(self, exponent: int) -> Scalar:
        if exponent % self.step:
            return self.field.zero
        return self._terms.get(exponent // self.step, self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> Optional[int]:
        """Degree of a nonzero monomial, None otherwise"""
        if len(self._terms) != 1:
            return None
        (k,) = self._terms
        return k * self.step

    def component(self, d: int) -> "LaurentPoly":
        if d % self.step or d // self.step not in self._terms:
            return LaurentPoly(self.field, self.step)
        return LaurentPoly(self.field, self.step, {d // self.step: self._terms[d // self.step]})

    def components(self) -> Iterator[Tuple[int, "LaurentPoly"]]:
        for exponent in self.support():
            yield exponent, self.component(exponent)

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.render()} is not a unit of the Laurent ring")
        ((k, c),) = self._terms.items()
        return LaurentPoly(self.field, self.step, {-k: self.field.inv(c)})

    # Arithmetic

    def _check(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise StructuralError(f"cannot combine LaurentPoly with {type(other).__name__}")
        if other.step != self.step:
            raise StructuralError(f"Laurent step mismatch: {self.step} vs {other.step}")
        if other.field != self.field:
            raise StructuralError(f"field mismatch: {self.field.label} vs {other.field.label}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return LaurentPoly(self.field, self.step, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, self.step, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms: Dict[int, Scalar] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                terms[k] = terms[k] + c1 * c2 if k in terms else c1 * c2
        return LaurentPoly(self.field, self.step, terms)

    def scale(self, c: ScalarLike) -> "LaurentPoly":
        value = self.field(c)
        return LaurentPoly(self.field, self.step, {k: v * value for k, v in self._terms.items()})

    def with_step(self, step: int) -> "LaurentPoly":
        """Reinterpret inside K[x^step, x^-step]; exponents must stay admissible"""
        terms = {}
        for exponent, c in self.terms().items():
            if exponent % step:
                raise StructuralError(f"x^{exponent} is not in K[x^{step}, x^-{step}]")
            terms[exponent // step] = c
        return LaurentPoly(self.field, step, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.step == other.step
            and self.field == other.field
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            residues = tuple(sorted((k, self.field.render(c)) for k, c in self._terms.items()))
            self._hash = hash((self.field, self.step, residues))
        return self._hash

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exponent, c in self.terms().items():
            coeff = self.field.render(c)
            if exponent == 0:
                parts.append(coeff)
                continue
            power = "x" if exponent == 1 else f"x^{exponent}"
            if coeff == "1":
                parts.append(power)
            elif coeff == "-1":
                parts.append(f"-{power}")
            else:
                parts.append(f"{coeff}*{power}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()}, step={self.step})"


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_component(a: LaurentPoly, d: int) -> LaurentPoly:
    return a.component(d)


def laurent_is_unit(a: LaurentPoly) -> bool:
    return a.is_unit()


def laurent_sum(field: Field, step: int, items: Iterable[LaurentPoly]) -> LaurentPoly:
    total = LaurentPoly.zero(field, step)
    for item in items:
        total = total + item
    return total
