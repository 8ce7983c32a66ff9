"""Graded matrix rings M_n(K)(shifts) and M_n(K[x^m, x^-m])(shifts)

Grading law: entry (i, j) of a degree-d matrix lies in R_{d - shift_i + shift_j},
so the matrix unit e_ij has degree shift_i - shift_j.
"""
import enum
import logging
from collections import Counter
from typing import Dict, List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from gradedlpa.errors import (
    ContractViolation,
    InvariantViolation,
    InvertibleMatrixError,
    NoConstructiveProcedure,
    StructuralError,
)
from gradedlpa.models.report import Verdict, VerdictValue
from gradedlpa.models.ring import GradedMatrixRing
from gradedlpa.services import linalg
from gradedlpa.services.coeff import Field, LaurentPoly, ScalarLike

logger = logging.getLogger(__name__)

CLEAN_TRIVIAL_BASE = "graded-clean-matrix: trivial base needs equal shifts"
CLEAN_LAURENT_BASE = "graded-clean-matrix: Laurent base needs n = 1"
EXCHANGE_TRIVIAL_BASE = "graded-exchange-matrix: trivial base"
EXCHANGE_DISTINCT_RESIDUES = "graded-exchange-matrix: every residue at most once"
EXCHANGE_REPEATED_RESIDUE = "graded-exchange-matrix: no claim when a residue repeats"


class DegreeTag(str, enum.Enum):
    ZERO = "zero"
    INHOMOGENEOUS = "inhomogeneous"


Degree = Union[int, DegreeTag]


class GMatrix:
    """Immutable n x n matrix over the base ring of a GradedMatrixRing"""

    __slots__ = ("ring", "field", "entries")

    def __init__(self, ring: GradedMatrixRing, field: Field, entries: np.ndarray):
        n = ring.n
        if entries.shape != (n, n):
            raise StructuralError(f"{ring.label()} needs {n}x{n} entries, got {entries.shape}")
        for value in entries.flat:
            if not isinstance(value, LaurentPoly):
                raise StructuralError(f"matrix entries must be LaurentPoly, got {type(value).__name__}")
            if value.field != field or value.step != ring.step:
                raise StructuralError(f"entry {value.render()} is not in the base ring of {ring.label()}")
            if not ring.is_laurent and not value.is_constant():
                raise StructuralError(f"entry {value.render()} is not a constant of K")
        entries = entries.copy()
        entries.setflags(write=False)
        self.ring = ring
        self.field = field
        self.entries = entries

    # Constructors

    @classmethod
    def zero(cls, ring: GradedMatrixRing, field: Field) -> "GMatrix":
        entries = np.empty((ring.n, ring.n), dtype=object)
        for i in range(ring.n):
            for j in range(ring.n):
                entries[i, j] = LaurentPoly.zero(field, ring.step)
        return cls(ring, field, entries)

    @classmethod
    def identity(cls, ring: GradedMatrixRing, field: Field) -> "GMatrix":
        return cls.diagonal(ring, field, [1] * ring.n)

    @classmethod
    def diagonal(cls, ring: GradedMatrixRing, field: Field, values: Sequence) -> "GMatrix":
        entries = cls.zero(ring, field).entries.copy()
        for i, value in enumerate(values):
            entries[i, i] = _entry(ring, field, value)
        return cls(ring, field, entries)

    @classmethod
    def unit(cls, ring: GradedMatrixRing, field: Field, i: int, j: int, value=1) -> "GMatrix":
        """value * e_ij (0-based indices)"""
        entries = cls.zero(ring, field).entries.copy()
        entries[i, j] = _entry(ring, field, value)
        return cls(ring, field, entries)

    @classmethod
    def from_rows(cls, ring: GradedMatrixRing, field: Field, rows: Sequence[Sequence]) -> "GMatrix":
        """Entries may be LaurentPoly, field scalars, or {exponent: coeff} maps"""
        if len(rows) != ring.n or any(len(row) != ring.n for row in rows):
            raise StructuralError(f"{ring.label()} needs {ring.n}x{ring.n} rows")
        entries = np.empty((ring.n, ring.n), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                entries[i, j] = _entry(ring, field, value)
        return cls(ring, field, entries)

    @classmethod
    def from_constants(cls, ring: GradedMatrixRing, field: Field, matrix: np.ndarray) -> "GMatrix":
        entries = np.empty((ring.n, ring.n), dtype=object)
        for i in range(ring.n):
            for j in range(ring.n):
                entries[i, j] = LaurentPoly.constant(field, matrix[i, j], ring.step)
        return cls(ring, field, entries)

    # Arithmetic

    def _check(self, other: "GMatrix") -> None:
        if not isinstance(other, GMatrix):
            raise StructuralError(f"cannot combine GMatrix with {type(other).__name__}")
        if other.ring != self.ring or other.field != self.field:
            raise StructuralError(f"ring mismatch: {self.ring.label()} vs {other.ring.label()}")

    def __add__(self, other: "GMatrix") -> "GMatrix":
        self._check(other)
        return GMatrix(self.ring, self.field, self.entries + other.entries)

    def __sub__(self, other: "GMatrix") -> "GMatrix":
        self._check(other)
        return GMatrix(self.ring, self.field, self.entries - other.entries)

    def __neg__(self) -> "GMatrix":
        out = np.empty_like(self.entries)
        for idx, value in np.ndenumerate(self.entries):
            out[idx] = -value
        return GMatrix(self.ring, self.field, out)

    def __mul__(self, other: "GMatrix") -> "GMatrix":
        self._check(other)
        n = self.ring.n
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                acc = LaurentPoly.zero(self.field, self.ring.step)
                for k in range(n):
                    left = self.entries[i, k]
                    if left.is_zero():
                        continue
                    right = other.entries[k, j]
                    if not right.is_zero():
                        acc = acc + left * right
                out[i, j] = acc
        return GMatrix(self.ring, self.field, out)

    def power(self, k: int) -> "GMatrix":
        result = GMatrix.identity(self.ring, self.field)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c: ScalarLike) -> "GMatrix":
        out = np.empty_like(self.entries)
        for idx, value in np.ndenumerate(self.entries):
            out[idx] = value.scale(c)
        return GMatrix(self.ring, self.field, out)

    def one_minus(self) -> "GMatrix":
        return GMatrix.identity(self.ring, self.field) - self

    # Grading

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.flat)

    def degree(self) -> Degree:
        found = None
        shifts = self.ring.shifts
        for (i, j), value in np.ndenumerate(self.entries):
            if value.is_zero():
                continue
            t = value.degree()
            if t is None:
                return DegreeTag.INHOMOGENEOUS
            d = t + shifts[i] - shifts[j]
            if found is None:
                found = d
            elif found != d:
                return DegreeTag.INHOMOGENEOUS
        return DegreeTag.ZERO if found is None else found

    def is_homogeneous(self) -> bool:
        return self.degree() != DegreeTag.INHOMOGENEOUS

    def components(self) -> Dict[int, "GMatrix"]:
        """Homogeneous components keyed by degree"""
        parts: Dict[int, np.ndarray] = {}
        shifts = self.ring.shifts
        for (i, j), value in np.ndenumerate(self.entries):
            for t, term in value.components():
                d = t + shifts[i] - shifts[j]
                if d not in parts:
                    parts[d] = GMatrix.zero(self.ring, self.field).entries.copy()
                parts[d][i, j] = term
        return {d: GMatrix(self.ring, self.field, parts[d]) for d in sorted(parts)}

    def is_idempotent(self) -> bool:
        return self * self == self

    # Determinants and inverses

    def determinant(self) -> LaurentPoly:
        return _determinant([list(row) for row in self.entries], self.field, self.ring.step)

    def inverse(self) -> "GMatrix":
        """Adjugate over det^-1; det must be a unit of the base ring"""
        det = self.determinant()
        if not det.is_unit():
            raise ContractViolation(f"matrix with determinant {det.render()} is not invertible")
        det_inv = det.inverse()
        n = self.ring.n
        rows = [list(row) for row in self.entries]
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                minor = [r[:i] + r[i + 1:] for k, r in enumerate(rows) if k != j]
                cofactor = _determinant(minor, self.field, self.ring.step) if minor else LaurentPoly.one(self.field, self.ring.step)
                if (i + j) % 2:
                    cofactor = -cofactor
                out[i, j] = cofactor * det_inv
        return GMatrix(self.ring, self.field, out)

    def constants(self) -> np.ndarray:
        """Exponent-0 coefficients as a field matrix"""
        out = linalg.zeros(self.field, self.ring.n, self.ring.n)
        for idx, value in np.ndenumerate(self.entries):
            out[idx] = value.coefficient(0)
        return out

    # Identity and display

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.field == other.field
            and all(a == b for a, b in zip(self.entries.flat, other.entries.flat))
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.field, tuple(self.entries.flat)))

    def render(self) -> List[List[str]]:
        return [[value.render() for value in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"GMatrix({self.ring.label()}, {self.render()})"


def _entry(ring: GradedMatrixRing, field: Field, value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, dict):
        poly = LaurentPoly.zero(field, ring.step)
        for exponent, coeff in value.items():
            poly = poly + LaurentPoly.monomial(field, exponent, coeff, ring.step)
        return poly
    return LaurentPoly.constant(field, value, ring.step)


def _determinant(rows: List[List[LaurentPoly]], field: Field, step: int) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = LaurentPoly.zero(field, step)
    for j, pivot in enumerate(rows[0]):
        if pivot.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = pivot * _determinant(minor, field, step)
        total = total - term if j % 2 else total + term
    return total


def gm_degree(a: GMatrix) -> Degree:
    return a.degree()


def gm_is_graded_unit(a: GMatrix) -> bool:
    if not isinstance(a.degree(), int):
        return False
    return a.determinant().is_unit()


def gm_inverse(a: GMatrix) -> GMatrix:
    return a.inverse()


# Shift normalization


class ShiftNormalization:
    """Graded isomorphism onto the canonical shift vector.

    Shifts are translated by a common integer, reduced mod m by conjugating
    with diag(x^c_i) (c_i multiples of m), then sorted. forward maps matrices
    of the source ring to the normalized ring, backward undoes it.
    """

    def __init__(self, ring: GradedMatrixRing):
        self.source = ring
        shifts = ring.shifts
        if ring.is_laurent:
            m = ring.m
            best = None
            for t in range(m):
                candidate = tuple(sorted((g - t) % m for g in shifts))
                if best is None or candidate < best[0]:
                    best = (candidate, t)
            t = best[1]
            reduced = [(g - t) % m for g in shifts]
            self.conjugation = [(g - t) - r for g, r in zip(shifts, reduced)]
        else:
            t = min(shifts)
            reduced = [g - t for g in shifts]
            self.conjugation = [0] * ring.n
        self.translation = t
        # perm[new] = old
        self.perm = sorted(range(ring.n), key=lambda i: (reduced[i], i))
        target_shifts = tuple(reduced[i] for i in self.perm)
        if ring.is_laurent:
            self.target = GradedMatrixRing.over_laurent(ring.m, target_shifts)
        else:
            self.target = GradedMatrixRing.over_field(target_shifts)

    def _monomial(self, field: Field, exponent: int) -> LaurentPoly:
        return LaurentPoly.monomial(field, exponent, 1, self.source.step)

    def forward(self, a: GMatrix) -> GMatrix:
        if a.ring != self.source:
            raise StructuralError("matrix is not in the source ring of this normalization")
        n = self.source.n
        out = np.empty((n, n), dtype=object)
        for new_i, i in enumerate(self.perm):
            for new_j, j in enumerate(self.perm):
                value = a.entries[i, j]
                if self.source.is_laurent and not value.is_zero():
                    value = self._monomial(a.field, self.conjugation[i]) * value * self._monomial(a.field, -self.conjugation[j])
                out[new_i, new_j] = value
        return GMatrix(self.target, a.field, out)

    def backward(self, b: GMatrix) -> GMatrix:
        if b.ring != self.target:
            raise StructuralError("matrix is not in the normalized ring")
        n = self.source.n
        out = np.empty((n, n), dtype=object)
        for new_i, i in enumerate(self.perm):
            for new_j, j in enumerate(self.perm):
                value = b.entries[new_i, new_j]
                if self.source.is_laurent and not value.is_zero():
                    value = self._monomial(b.field, -self.conjugation[i]) * value * self._monomial(b.field, self.conjugation[j])
                out[i, j] = value
        return GMatrix(self.source, b.field, out)


def normalize_shifts(ring: GradedMatrixRing) -> GradedMatrixRing:
    return ShiftNormalization(ring).target


def residue_multiplicities(ring: GradedMatrixRing) -> Tuple[int, ...]:
    if not ring.is_laurent:
        raise ContractViolation("residue multiplicities need a Laurent base")
    counts = Counter(g % ring.m for g in ring.shifts)
    return tuple(counts.get(i, 0) for i in range(ring.m))


def zero_component_structure(ring: GradedMatrixRing) -> List[List[int]]:
    """Index partition giving S_0 as a sum of full matrix algebras over K"""
    groups: Dict[int, List[int]] = {}
    for i, g in enumerate(ring.shifts):
        key = g % ring.m if ring.is_laurent else g
        groups.setdefault(key, []).append(i)
    return [groups[key] for key in sorted(groups)]


# Ring-level deciders


def is_graded_clean_ring(ring: GradedMatrixRing) -> Verdict:
    if ring.is_laurent:
        return Verdict.of(ring.n == 1, CLEAN_LAURENT_BASE)
    return Verdict.of(len(set(ring.shifts)) == 1, CLEAN_TRIVIAL_BASE)


def graded_exchange_ring(ring: GradedMatrixRing) -> Verdict:
    if not ring.is_laurent:
        return Verdict.yes(EXCHANGE_TRIVIAL_BASE)
    if max(residue_multiplicities(ring)) <= 1:
        return Verdict.yes(EXCHANGE_DISTINCT_RESIDUES)
    logger.warning(f"{ring.label()}: repeated residue, graded exchange left open")
    return Verdict.unknown(EXCHANGE_REPEATED_RESIDUE)


# Constructive witnesses


class ExchangeWitness(NamedTuple):
    """Idempotent e of degree 0 with e = a r and 1 - e = (1 - a) s"""
    e: GMatrix
    r: GMatrix
    s: GMatrix


def verify_exchange(a: GMatrix, witness: ExchangeWitness) -> bool:
    e, r, s = witness
    return (
        e.is_idempotent()
        and e.degree() in (0, DegreeTag.ZERO)
        and a * r == e
        and a.one_minus() * s == e.one_minus()
    )


class _OrbitSystem:
    """A homogeneous matrix of degree d (d not divisible by m) in the full
    ring M_m(K[x^m])(0, ..., m-1), seen through the permutation
    sigma(i) = (i - d) mod m that carries its only nonzero entry per row."""

    def __init__(self, full: GMatrix, d: int):
        m = full.ring.n
        self.full = full
        self.sigma = [(i - d) % m for i in range(m)]
        self.alpha = [full.entries[i, self.sigma[i]] for i in range(m)]
        seen = set()
        self.orbits: List[List[int]] = []
        for start in range(m):
            if start in seen:
                continue
            orbit, i = [], start
            while i not in seen:
                seen.add(i)
                orbit.append(i)
                i = self.sigma[i]
            self.orbits.append(orbit)

    def unit_orbit(self, orbit: List[int]) -> bool:
        return all(not self.alpha[i].is_zero() for i in orbit)

    def inverse_on(self, orbits: List[List[int]]) -> np.ndarray:
        """a^-1 restricted to orbits whose coefficients are all nonzero"""
        out = GMatrix.zero(self.full.ring, self.full.field).entries.copy()
        for orbit in orbits:
            for i in orbit:
                out[self.sigma[i], i] = self.alpha[i].inverse()
        return out

    def one_minus_inverse_on(self, orbits: List[List[int]]) -> np.ndarray:
        """Columns of (1 - a)^-1 for orbits containing a zero coefficient.

        Per column j the system b_ij - alpha_i b_sigma(i)j = [i = j] collapses
        to b_jj (1 - prod alpha) = 1 with prod alpha = 0, then the other entries
        of the orbit follow by back substitution.
        """
        ring, field = self.full.ring, self.full.field
        out = GMatrix.zero(ring, field).entries.copy()
        for orbit in orbits:
            length = len(orbit)
            for j in orbit:
                chain = [j]
                for _ in range(length - 1):
                    chain.append(self.sigma[chain[-1]])
                out[j, j] = LaurentPoly.one(field, ring.step)
                following = out[j, j]
                for i in reversed(chain[1:]):
                    following = self.alpha[i] * following
                    out[i, j] = following
        return out


def _pad_to_full(a: GMatrix) -> Tuple[GMatrix, List[int]]:
    """Embed a normalized matrix with distinct residue shifts into the
    ring with shifts (0, ..., m-1) by zero rows and columns; returns the
    padded matrix and the positions of the original indices."""
    m = a.ring.m
    positions = list(a.ring.shifts)
    full_ring = GradedMatrixRing.over_laurent(m, range(m))
    entries = GMatrix.zero(full_ring, a.field).entries.copy()
    for i, pi in enumerate(positions):
        for j, pj in enumerate(positions):
            entries[pi, pj] = a.entries[i, j]
    return GMatrix(full_ring, a.field, entries), positions


def _restrict(ring: GradedMatrixRing, field: Field, full: np.ndarray, positions: List[int]) -> GMatrix:
    n = len(positions)
    out = np.empty((n, n), dtype=object)
    for i, pi in enumerate(positions):
        for j, pj in enumerate(positions):
            out[i, j] = full[pi, pj]
    return GMatrix(ring, field, out)


def _require_distinct_residues(a: GMatrix) -> int:
    ring = a.ring
    if not ring.is_laurent:
        raise ContractViolation("this construction needs a Laurent base")
    if max(residue_multiplicities(ring)) > 1:
        raise ContractViolation(f"{ring.label()} repeats a shift residue")
    d = a.degree()
    if d == DegreeTag.INHOMOGENEOUS:
        raise ContractViolation("matrix is not homogeneous")
    return d


def _orbit_setup(a: GMatrix, d: int):
    normalization = ShiftNormalization(a.ring)
    full, positions = _pad_to_full(normalization.forward(a))
    return normalization, positions, _OrbitSystem(full, d)


def right_inverse_one_minus(a: GMatrix) -> GMatrix:
    """b with (1 - a) b = 1 for homogeneous a of degree not divisible by m"""
    d = _require_distinct_residues(a)
    if d == DegreeTag.ZERO:
        return GMatrix.identity(a.ring, a.field)
    if d % a.ring.m == 0:
        raise ContractViolation("degree divisible by m is the diagonal case")
    normalization, positions, system = _orbit_setup(a, d)
    target = normalization.target

    if all(system.unit_orbit(o) for o in system.orbits):
        inverse = normalization.backward(_restrict(target, a.field, system.inverse_on(system.orbits), positions))
        raise InvertibleMatrixError("a is invertible, so 1 - a is not the right-invertible side", inverse)
    blocked = [o for o in system.orbits if system.unit_orbit(o)]
    if blocked:
        raise ContractViolation(f"1 - a is not invertible: orbit {blocked[0]} has no vanishing coefficient")

    full_b = system.one_minus_inverse_on(system.orbits)
    b = normalization.backward(_restrict(target, a.field, full_b, positions))
    if a.one_minus() * b != GMatrix.identity(a.ring, a.field):
        raise InvariantViolation("constructed right inverse of 1 - a failed the exact check")
    return b


def graded_exchange_witness(a: GMatrix) -> ExchangeWitness:
    """(e, r, s) for a homogeneous matrix of a graded exchange matrix ring"""
    d = a.degree()
    if d == DegreeTag.INHOMOGENEOUS:
        raise ContractViolation("graded exchange witness needs a homogeneous matrix")
    if graded_exchange_ring(a.ring).value != VerdictValue.YES:
        raise NoConstructiveProcedure(f"no constructive procedure available for {a.ring.label()}")

    ring, field = a.ring, a.field
    one = GMatrix.identity(ring, field)
    zero = GMatrix.zero(ring, field)
    if d == DegreeTag.ZERO:
        witness = ExchangeWitness(zero, zero, one)
    elif not ring.is_laurent:
        witness = _field_base_witness(a, d)
    elif d % ring.m == 0:
        witness = _diagonal_witness(a)
    else:
        witness = _orbit_witness(a, d)

    if not verify_exchange(a, witness):
        raise InvariantViolation(f"exchange witness for {a.render()} failed the exact check")
    return witness


def _field_base_witness(a: GMatrix, d: int) -> ExchangeWitness:
    ring, field = a.ring, a.field
    zero = GMatrix.zero(ring, field)
    if d != 0:
        # nonzero degree over a trivially graded field: a is nilpotent
        s = GMatrix.identity(ring, field)
        power = s
        for _ in range(1, ring.n):
            power = power * a
            s = s + power
        return ExchangeWitness(zero, zero, s)

    x = a.constants()
    e = linalg.zeros(field, ring.n, ring.n)
    r = linalg.zeros(field, ring.n, ring.n)
    s = linalg.zeros(field, ring.n, ring.n)
    for block in zero_component_structure(ring):
        xb = x[np.ix_(block, block)]
        eb, rb, sb = _field_exchange(field, xb)
        e[np.ix_(block, block)] = eb
        r[np.ix_(block, block)] = rb
        s[np.ix_(block, block)] = sb
    return ExchangeWitness(
        GMatrix.from_constants(ring, field, e),
        GMatrix.from_constants(ring, field, r),
        GMatrix.from_constants(ring, field, s),
    )


def _field_exchange(field: Field, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exchange data in M_k(K): e projects onto col(x) along a complement inside col(1 - x)"""
    k = x.shape[0]
    one = linalg.identity(field, k)
    y = one - x
    columns = [x[:, c] for c in linalg.column_basis(field, x)]
    rank_x = len(columns)
    for c in range(k):
        trial = np.column_stack(columns + [y[:, c]]) if columns else y[:, [c]]
        if linalg.rank(field, trial) > len(columns):
            columns.append(y[:, c])
        if len(columns) == k:
            break
    basis = np.column_stack(columns)
    projector = linalg.zeros(field, k, k)
    for i in range(rank_x):
        projector[i, i] = field.one
    e = linalg.matmul(field, linalg.matmul(field, basis, projector), linalg.inverse(field, basis))
    r = linalg.solve(field, x, e)
    s = linalg.solve(field, y, one - e)
    if r is None or s is None:
        raise InvariantViolation("exchange data over K could not be solved")
    return e, r, s


def _diagonal_witness(a: GMatrix) -> ExchangeWitness:
    """Degree divisible by m with distinct residues: a is diagonal"""
    ring, field = a.ring, a.field
    e_diag, r_diag, s_diag = [], [], []
    for i in range(ring.n):
        value = a.entries[i, i]
        if value.is_zero():
            e_diag.append(0)
            r_diag.append(0)
            s_diag.append(1)
        else:
            e_diag.append(1)
            r_diag.append(value.inverse())
            s_diag.append(0)
    return ExchangeWitness(
        GMatrix.diagonal(ring, field, e_diag),
        GMatrix.diagonal(ring, field, r_diag),
        GMatrix.diagonal(ring, field, s_diag),
    )


def _orbit_witness(a: GMatrix, d: int) -> ExchangeWitness:
    """e is the identity on orbits where a is invertible and zero where 1 - a is"""
    normalization, positions, system = _orbit_setup(a, d)
    target, field = normalization.target, a.field
    invertible = [o for o in system.orbits if system.unit_orbit(o)]
    singular = [o for o in system.orbits if not system.unit_orbit(o)]
    logger.debug(f"orbit split: invertible {invertible}, singular {singular}")

    full_ring = system.full.ring
    e_full = GMatrix.zero(full_ring, field).entries.copy()
    for orbit in invertible:
        for i in orbit:
            e_full[i, i] = LaurentPoly.one(field, full_ring.step)

    def back(full: np.ndarray) -> GMatrix:
        return normalization.backward(_restrict(target, field, full, positions))

    return ExchangeWitness(back(e_full), back(system.inverse_on(invertible)), back(system.one_minus_inverse_on(singular)))


def lift_from_exchange(a: GMatrix, witness: ExchangeWitness) -> GMatrix:
    """t = r - s, which satisfies e - a = (a - a^2) t"""
    t = witness.r - witness.s
    if witness.e - a != (a - a * a) * t:
        raise InvariantViolation("exchange data did not give a lifting element")
    return t


def exchange_from_clean(x: GMatrix, u: GMatrix, e: GMatrix) -> ExchangeWitness:
    """Exchange data from x = u + e: f = u(1 - e)u^-1, r = 1 + (1 - x)u^-1, s = 1 - x u^-1"""
    if u + e != x:
        raise ContractViolation("u + e does not equal x")
    u_inv = u.inverse()
    one = GMatrix.identity(x.ring, x.field)
    f = u * e.one_minus() * u_inv
    witness = ExchangeWitness(f, one + x.one_minus() * u_inv, one - x * u_inv)
    if not verify_exchange(x, witness):
        raise InvariantViolation("clean decomposition did not convert to exchange data")
    return witness
