"""Nonunital calculus on finite rings: the * and o monoids, the unitization R^u,
and checkable versions of DF, UR, sr=1, clean and exchange"""
import itertools
import logging
from typing import Callable, Hashable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from gradedlpa.config import settings
from gradedlpa.errors import ContractViolation, InvariantViolation, StructuralError
from gradedlpa.models.ring import GradedMatrixRing

logger = logging.getLogger(__name__)

Element = Hashable
DegreeFn = Callable[[Element], Optional[int]]


class FiniteRing:
    """A finite, possibly nonunital, possibly graded ring.

    The carrier order is the enumeration order: every search returns the
    first witness in it. Addition and multiplication are tabulated once as
    index arrays.
    """

    def __init__(
        self,
        name: str,
        elements: Sequence[Element],
        add: Callable[[Element, Element], Element],
        mul: Callable[[Element, Element], Element],
        neg: Callable[[Element], Element],
        zero: Element,
        one: Optional[Element] = None,
        degree: Optional[DegreeFn] = None,
    ):
        self.name = name
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise StructuralError(f"{name}: repeated carrier element")
        if zero not in self.index:
            raise StructuralError(f"{name}: zero is not in the carrier")
        self.zero = zero
        self.one = one
        self._degree = degree
        size = len(self.elements)
        self.add_table = np.empty((size, size), dtype=np.int64)
        self.mul_table = np.empty((size, size), dtype=np.int64)
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                self.add_table[i, j] = self._lookup(add(x, y))
                self.mul_table[i, j] = self._lookup(mul(x, y))
        self.neg_table = np.array([self._lookup(neg(x)) for x in self.elements], dtype=np.int64)
        self.zero_index = self.index[zero]
        self._check_axioms()
        logger.debug(f"Built finite ring {name} with {size} elements")

    def _lookup(self, x: Element) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise StructuralError(f"{self.name}: operation left the carrier ({x!r})")

    def _check_axioms(self) -> None:
        size = len(self.elements)
        if size <= settings.ring_axiom_check_limit:
            idx = np.arange(size)
        else:
            idx = np.linspace(0, size - 1, settings.ring_axiom_check_limit).astype(np.int64)
        a, b, c = np.ix_(idx, idx, idx)
        M, A = self.mul_table, self.add_table
        checks = {
            "associativity of +": A[A[a, b], c] == A[a, A[b, c]],
            "associativity of *": M[M[a, b], c] == M[a, M[b, c]],
            "left distributivity": M[a, A[b, c]] == A[M[a, b], M[a, c]],
            "right distributivity": M[A[a, b], c] == A[M[a, c], M[b, c]],
        }
        for label, ok in checks.items():
            if not np.all(ok):
                raise StructuralError(f"{self.name}: {label} fails")
        if not np.array_equal(A, A.T):
            raise StructuralError(f"{self.name}: addition is not commutative")
        if not np.all(A[self.zero_index, :] == np.arange(size)):
            raise StructuralError(f"{self.name}: zero is not additive identity")
        if not np.all(A[np.arange(size), self.neg_table] == self.zero_index):
            raise StructuralError(f"{self.name}: negation is not additive inverse")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, {len(self)} elements)"

    # Element-level operations

    def add(self, x: Element, y: Element) -> Element:
        return self.elements[self.add_table[self.index[x], self.index[y]]]

    def mul(self, x: Element, y: Element) -> Element:
        return self.elements[self.mul_table[self.index[x], self.index[y]]]

    def neg(self, x: Element) -> Element:
        return self.elements[self.neg_table[self.index[x]]]

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def int_multiples(self, k: int) -> np.ndarray:
        """Index array of k*x for every x"""
        size = len(self.elements)
        out = np.full(size, self.zero_index, dtype=np.int64)
        step = np.arange(size) if k >= 0 else self.neg_table
        for _ in range(abs(k)):
            out = self.add_table[out, step]
        return out

    def int_mul(self, k: int, x: Element) -> Element:
        return self.elements[self.int_multiples(k)[self.index[x]]]

    # Grading

    @property
    def is_graded(self) -> bool:
        return self._degree is not None

    def degree(self, x: Element) -> Optional[int]:
        """Degree of a nonzero homogeneous element; None for inhomogeneous ones"""
        if not self.is_graded:
            return 0
        return self._degree(x)

    def component(self, d: int) -> List[Element]:
        return [x for x in self.elements if x == self.zero or self.degree(x) == d]

    def degrees(self) -> List[int]:
        found = {self.degree(x) for x in self.elements if x != self.zero}
        return sorted(d for d in found if d is not None)

    def idempotents(self, degree: Optional[int] = None) -> List[Element]:
        pool = self.elements if degree is None else self.component(degree)
        return [e for e in pool if self.mul(e, e) == e]


# Factories


def _pattern_ring(name: str, n: int, p: int, positions: Sequence[Tuple[int, int]],
                  degree: Optional[DegreeFn] = None, unital: bool = False) -> FiniteRing:
    """Matrices over F_p supported on the given positions, as row-major tuples"""
    allowed = sorted(set(positions))
    elements = []
    for values in itertools.product(range(p), repeat=len(allowed)):
        flat = [0] * (n * n)
        for (i, j), v in zip(allowed, values):
            flat[i * n + j] = v
        elements.append(tuple(flat))

    def add(x, y):
        return tuple((a + b) % p for a, b in zip(x, y))

    def mul(x, y):
        return tuple(
            sum(x[i * n + k] * y[k * n + j] for k in range(n)) % p
            for i in range(n) for j in range(n)
        )

    def neg(x):
        return tuple((-a) % p for a in x)

    zero = tuple([0] * (n * n))
    one = tuple(1 if i == j else 0 for i in range(n) for j in range(n)) if unital else None
    return FiniteRing(name, elements, add, mul, neg, zero, one=one, degree=degree)


def prime_field(p: int) -> FiniteRing:
    return _pattern_ring(f"F_{p}", 1, p, [(0, 0)], unital=True)


def matrix_ring(n: int, p: int) -> FiniteRing:
    positions = [(i, j) for i in range(n) for j in range(n)]
    return _pattern_ring(f"M_{n}(F_{p})", n, p, positions, unital=True)


def strictly_upper_triangular(n: int, p: int) -> FiniteRing:
    positions = [(i, j) for i in range(n) for j in range(n) if i < j]
    return _pattern_ring(f"T_{n}(F_{p})", n, p, positions)


def graded_matrix_finite_ring(ring: GradedMatrixRing, p: int) -> FiniteRing:
    """M_n(F_p)(shifts) with its grading: the unit e_ij sits in degree shift_i - shift_j"""
    if ring.is_laurent:
        raise ContractViolation("a Laurent-based matrix ring is infinite; use zero_component_ring")
    n, shifts = ring.n, ring.shifts

    def degree(x) -> Optional[int]:
        found = {shifts[k // n] - shifts[k % n] for k, v in enumerate(x) if v}
        return found.pop() if len(found) == 1 else None

    positions = [(i, j) for i in range(n) for j in range(n)]
    return _pattern_ring(ring.label().replace("K", f"F_{p}"), n, p, positions, degree=degree, unital=True)


def zero_component_ring(ring: GradedMatrixRing, p: int) -> FiniteRing:
    """S_0 over F_p: matrices supported where the shifts agree (mod m for a Laurent base).

    A degree-0 entry at (i, j) is c * x^(shift_j - shift_i), and these powers
    multiply consistently, so only the constants c need storing.
    """
    n = ring.n

    def same(i, j) -> bool:
        gi, gj = ring.shifts[i], ring.shifts[j]
        return (gi - gj) % ring.m == 0 if ring.is_laurent else gi == gj

    positions = [(i, j) for i in range(n) for j in range(n) if same(i, j)]
    return _pattern_ring(f"{ring.label()}_0 over F_{p}", n, p, positions, unital=True)


def corner(R: FiniteRing, e: Element) -> FiniteRing:
    """eRe for an idempotent e"""
    if R.mul(e, e) != e:
        raise ContractViolation(f"{R.name}: corner needs an idempotent")
    seen = {}
    for x in R.elements:
        y = R.mul(R.mul(e, x), e)
        seen.setdefault(y, None)
    degree = R.degree if R.is_graded else None
    return FiniteRing(f"e{R.name}e", list(seen), R.add, R.mul, R.neg, R.zero, one=e, degree=degree)


def direct_sum(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    elements = [(x, y) for x in R.elements for y in S.elements]
    one = (R.one, S.one) if R.one is not None and S.one is not None else None
    return FiniteRing(
        f"{R.name} + {S.name}",
        elements,
        lambda a, b: (R.add(a[0], b[0]), S.add(a[1], b[1])),
        lambda a, b: (R.mul(a[0], b[0]), S.mul(a[1], b[1])),
        lambda a: (R.neg(a[0]), S.neg(a[1])),
        (R.zero, S.zero),
        one=one,
    )


# The * and o operations


def star(R: FiniteRing, x: Element, y: Element) -> Element:
    """x * y = x + y + xy"""
    return R.add(R.add(x, y), R.mul(x, y))


def circ(R: FiniteRing, x: Element, y: Element) -> Element:
    """x o y = x + y - xy"""
    return R.sub(R.add(x, y), R.mul(x, y))


def _combine(R: FiniteRing, product: np.ndarray) -> np.ndarray:
    """Index table of x + y + product[x, y]"""
    return R.add_table[R.add_table, product]


def star_table(R: FiniteRing) -> np.ndarray:
    return _combine(R, R.mul_table)


def circ_table(R: FiniteRing) -> np.ndarray:
    return _combine(R, R.neg_table[R.mul_table])


def star_units(R: FiniteRing) -> List[Element]:
    """U(R, *): x with x * y = 0 = y * x for some y"""
    zero_mask = star_table(R) == R.zero_index
    both = zero_mask & zero_mask.T
    return [R.elements[i] for i in range(len(R)) if both[i].any()]


# Standard unitization


class UnitizationElement(NamedTuple):
    """(x, k) in R^u = R + Z"""
    x: Element
    k: int


def unitization_mul(R: FiniteRing, a: UnitizationElement, b: UnitizationElement) -> UnitizationElement:
    """(x, k)(y, l) = (xy + lx + ky, kl)"""
    x, k = a
    y, l = b
    first = R.add(R.add(R.mul(x, y), R.int_mul(l, x)), R.int_mul(k, y))
    return UnitizationElement(first, k * l)


def _unitization_masks(R: FiniteRing, k: int, l: int) -> Tuple[np.ndarray, np.ndarray]:
    """For fixed k, l: masks over (x, y) of (x,k)(y,l) = (0,1) and (y,l)(x,k) = (0,1)"""
    if k * l != 1:
        empty = np.zeros((len(R), len(R)), dtype=bool)
        return empty, empty
    kx, lx = R.int_multiples(k), R.int_multiples(l)
    A = R.add_table
    forward = A[A[R.mul_table, lx[:, None]], kx[None, :]]
    backward = A[A[R.mul_table.T, kx[:, None]], lx[None, :]]
    return forward == R.zero_index, backward == R.zero_index


def unitization_units(R: FiniteRing, window: Optional[int] = None) -> List[UnitizationElement]:
    """Invertible (x, k) of R^u with |k| <= window"""
    N = settings.unitization_window if window is None else window
    found = set()
    for k in range(-N, N + 1):
        for l in range(-N, N + 1):
            forward, backward = _unitization_masks(R, k, l)
            inverse_pairs = forward & backward
            for i in np.nonzero(inverse_pairs.any(axis=1))[0]:
                found.add((int(i), k))
    units = [UnitizationElement(R.elements[i], k) for i, k in sorted(found, key=lambda t: (t[1], t[0]))]
    if any(u.k not in (-1, 1) for u in units):
        raise InvariantViolation(f"{R.name}: unit of R^u with integer part outside +-1")
    return units


class DirectFinitenessReport(BaseModel):
    """Direct finiteness of (R, *), (R, o) and R^u"""
    ring: str = Field(..., description="Ring name")
    star_df: bool = Field(..., description="(R, *) is directly finite")
    circ_df: bool = Field(..., description="(R, o) is directly finite")
    unitization_df: bool = Field(..., description="R^u is directly finite on the integer window")
    window: int = Field(..., description="Integer window searched in R^u")

    @property
    def directly_finite(self) -> bool:
        return self.star_df


def _monoid_df(table: np.ndarray, zero_index: int) -> bool:
    mask = table == zero_index
    return bool(np.all(~mask | mask.T))


def is_df_general(R: FiniteRing, window: Optional[int] = None) -> DirectFinitenessReport:
    N = settings.unitization_window if window is None else window
    star_df = _monoid_df(star_table(R), R.zero_index)
    circ_df = _monoid_df(circ_table(R), R.zero_index)
    unit_df = True
    for k in range(-N, N + 1):
        for l in range(-N, N + 1):
            forward, backward = _unitization_masks(R, k, l)
            if np.any(forward & ~backward):
                unit_df = False
    report = DirectFinitenessReport(ring=R.name, star_df=star_df, circ_df=circ_df, unitization_df=unit_df, window=N)
    if len({star_df, circ_df, unit_df}) != 1:
        raise InvariantViolation(f"{R.name}: direct finiteness forms disagree: {report.model_dump()}")
    unitization_units(R, N)
    return report


# Unit-regularity, regularity, cleanness, exchange


def star_unit_regular_check(R: FiniteRing, x: Element) -> Optional[Element]:
    """Least u in U(*) with x = xux + x^2"""
    x2 = R.mul(x, x)
    for u in star_units(R):
        if R.add(R.mul(R.mul(x, u), x), x2) == x:
            return u
    return None


def is_unit_regular_general(R: FiniteRing) -> bool:
    return all(star_unit_regular_check(R, x) is not None for x in R.elements)


def is_regular(R: FiniteRing) -> bool:
    """x in xRx for every x"""
    M = R.mul_table
    for i in range(len(R)):
        xrx = M[M[i, :], i]
        if not np.any(xrx == i):
            return False
    return True


def clean_decomposition(R: FiniteRing, x: Element) -> Optional[Tuple[Element, Element]]:
    """Least (e, u) with x = e + u, e idempotent and u in U(*)"""
    units = set(star_units(R))
    for e in R.idempotents():
        u = R.sub(x, e)
        if u in units:
            return e, u
    return None


def is_clean_general(R: FiniteRing) -> bool:
    return all(clean_decomposition(R, x) is not None for x in R.elements)


def _right_ideal(R: FiniteRing, x: Element) -> set:
    return {R.elements[j] for j in R.mul_table[R.index[x], :]}


def _circ_set(R: FiniteRing, x: Element) -> set:
    return {R.elements[j] for j in circ_table(R)[R.index[x], :]}


def _star_set(R: FiniteRing, x: Element) -> set:
    return {R.elements[j] for j in star_table(R)[R.index[x], :]}


def _unitization_reaches(R: FiniteRing, x: Element, e: Element, window: int) -> bool:
    """(-e, 1) in (-x, 1) R^u, searching integer parts in the window"""
    target = UnitizationElement(R.neg(e), 1)
    left = UnitizationElement(R.neg(x), 1)
    for k in range(-window, window + 1):
        for y in R.elements:
            if unitization_mul(R, left, UnitizationElement(y, k)) == target:
                if k != 1:
                    raise InvariantViolation(f"{R.name}: unitization solution with integer part {k}")
                return True
    return False


def exchange_witnesses(R: FiniteRing, x: Element) -> List[Element]:
    """Degree-0 idempotents e with e in xR and e in x o R"""
    xR, xcR = _right_ideal(R, x), _circ_set(R, x)
    return [e for e in R.idempotents(0) if e in xR and e in xcR]


def exchange_witness_general(R: FiniteRing, x: Element, window: Optional[int] = None) -> Optional[Element]:
    """Least e = e^2 of degree 0 with e in xR and e in x o R.

    Cross-checks the two restatements: through -x (e in xR and -e in (-x) * R)
    and through the unitization ((-e, 1) in (-x, 1) R^u).
    """
    if R.degree(x) is None and x != R.zero:
        raise ContractViolation(f"{R.name}: exchange witness needs a homogeneous element")
    N = settings.unitization_window if window is None else window
    circ_form = exchange_witnesses(R, x)

    minus_x = R.neg(x)
    xR, star_minus = _right_ideal(R, x), _star_set(R, minus_x)
    star_form = [e for e in R.idempotents(0) if e in xR and R.neg(e) in star_minus]
    unit_form = [e for e in R.idempotents(0) if e in xR and _unitization_reaches(R, x, e, N)]

    if not (circ_form == star_form == unit_form):
        raise InvariantViolation(
            f"{R.name}: exchange restatements disagree at {x!r}: {circ_form} / {star_form} / {unit_form}"
        )
    return circ_form[0] if circ_form else None


def is_exchange_general(R: FiniteRing) -> bool:
    """Every element has an exchange idempotent (ungraded: all idempotents allowed)"""
    for x in R.elements:
        xR, xcR = _right_ideal(R, x), _circ_set(R, x)
        if not any(e in xR and e in xcR for e in R.idempotents()):
            return False
    return True


def is_graded_exchange_general(R: FiniteRing) -> bool:
    for d in R.degrees():
        for x in R.component(d):
            if exchange_witness_general(R, x) is None:
                return False
    return True


def star_stable_range_one_check(R: FiniteRing) -> Optional[Tuple[Element, Element]]:
    """Least (x, y) with 0 in x * R + yR but 0 outside (x + yz) * R for every z; None if sr=1 holds"""
    size = len(R)
    S = star_table(R)
    reaches = np.zeros((size, size), dtype=bool)
    reaches[np.arange(size)[:, None], S] = True  # reaches[x, w]: w in x * R
    star_zero = (S == R.zero_index).any(axis=1)
    for x in range(size):
        for y in range(size):
            negated = R.neg_table[R.mul_table[y, :]]
            if not reaches[x, negated].any():
                continue
            shifted = R.add_table[x, R.mul_table[y, :]]
            if not star_zero[shifted].any():
                return R.elements[x], R.elements[y]
    return None
