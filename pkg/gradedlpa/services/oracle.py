"""Brute-force oracle: exhaustive searches over homogeneous components of
graded matrix rings over F_p"""
import itertools
import logging
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from gradedlpa.errors import ContractViolation, InvariantViolation
from gradedlpa.models.evidence import EvidenceRecord, Outcome, SearchWindow
from gradedlpa.models.ring import GradedMatrixRing
from gradedlpa.services import linalg
from gradedlpa.services.coeff import Field, LaurentPoly
from gradedlpa.services.gmatrix import DegreeTag, GMatrix, gm_is_graded_unit

logger = logging.getLogger(__name__)

Position = Tuple[int, int]


class SearchResult(NamedTuple):
    """Outcome of one search with the enumeration-least witness"""
    outcome: Outcome
    witness: Optional[Dict[str, GMatrix]]
    candidates: int

    @property
    def found(self) -> bool:
        return self.outcome == Outcome.FOUND


def _degree_of(a: GMatrix) -> Optional[int]:
    """Degree of a homogeneous matrix, None for zero"""
    d = a.degree()
    if d == DegreeTag.INHOMOGENEOUS:
        raise ContractViolation(f"{a.render()} is not homogeneous")
    return None if d == DegreeTag.ZERO else d


def admissible_positions(ring: GradedMatrixRing, d: int) -> List[Tuple[Position, int]]:
    """Positions (i, j) that may be nonzero in degree d, with the entry exponent"""
    out = []
    for i, gi in enumerate(ring.shifts):
        for j, gj in enumerate(ring.shifts):
            exponent = d - gi + gj
            if ring.admits(exponent):
                out.append(((i, j), exponent))
    return out


def homogeneous_membership(y: GMatrix, target: GMatrix) -> Optional[GMatrix]:
    """Some s with y s = target, for homogeneous y and target; None if target is not in yR.

    For homogeneous target every solution has a solution among its
    degree (deg target - deg y) slices, so one linear solve over that
    slice decides membership.
    """
    t, dy = _degree_of(target), _degree_of(y)
    zero = GMatrix.zero(y.ring, y.field)
    if t is None:
        return zero
    if dy is None:
        return None
    ring, field = y.ring, y.field
    slots = admissible_positions(ring, t - dy)
    n = ring.n
    A = linalg.zeros(field, n * n, len(slots))
    b = linalg.zeros(field, n * n, 1)
    for (i, j), _ in admissible_positions(ring, t):
        b[i * n + j, 0] = target.entries[i, j].coefficient(t - ring.shifts[i] + ring.shifts[j])
    for col, ((k, j), _) in enumerate(slots):
        for i in range(n):
            entry = y.entries[i, k]
            if entry.is_zero():
                continue
            (coeff,) = entry.terms().values()
            A[i * n + j, col] = A[i * n + j, col] + coeff
    solution = linalg.solve(field, A, b)
    if solution is None:
        return None
    entries = zero.entries.copy()
    for col, ((k, j), exponent) in enumerate(slots):
        entries[k, j] = LaurentPoly.monomial(field, exponent, solution[col, 0], ring.step)
    s = GMatrix(ring, field, entries)
    if y * s != target:
        raise InvariantViolation("membership solve returned a wrong solution")
    return s


def ideal_membership(generators: Sequence[GMatrix], target: GMatrix) -> bool:
    """target in g_1 R + ... + g_k R, checked componentwise for a graded right ideal"""
    for d, part in target.components().items():
        if not _sum_membership(generators, part):
            return False
    return True


def _sum_membership(generators: Sequence[GMatrix], target: GMatrix) -> bool:
    t = _degree_of(target)
    if t is None:
        return True
    ring, field = target.ring, target.field
    n = ring.n
    columns = []
    for g in generators:
        dg = _degree_of(g)
        if dg is None:
            continue
        for (k, j), exponent in admissible_positions(ring, t - dg):
            unit = GMatrix.unit(ring, field, k, j, {exponent: 1})
            columns.append(g * unit)
    b = linalg.zeros(field, n * n, 1)
    for (i, j), _ in admissible_positions(ring, t):
        b[i * n + j, 0] = target.entries[i, j].coefficient(t - ring.shifts[i] + ring.shifts[j])
    if not columns:
        return linalg.is_zero(field, b)
    A = linalg.zeros(field, n * n, len(columns))
    for col, product in enumerate(columns):
        for (i, j), _ in admissible_positions(ring, t):
            A[i * n + j, col] = product.entries[i, j].coefficient(t - ring.shifts[i] + ring.shifts[j])
    return linalg.solve(field, A, b) is not None


def one_minus_membership(x: GMatrix, f: GMatrix) -> Optional[GMatrix]:
    """Some s with (1 - x) s = f for homogeneous x and a degree-0 f, or None.

    For deg x != 0 the degree components force s_0 = f and x^k f = 0 for
    large k, so the answer is decided by x^n f.
    """
    d = _degree_of(x)
    if d is None or d == 0:
        return homogeneous_membership(x.one_minus(), f)
    n = x.ring.n
    if not (x.power(n) * f).is_zero():
        return None
    s = GMatrix.zero(x.ring, x.field)
    term = f
    for _ in range(n):
        s = s + term
        term = x * term
    return s


class BruteForceOracle:
    """Exhaustive searches over finite homogeneous components.

    Degree-0 idempotents are enumerated once per ring and field.
    """

    def __init__(self):
        self._idempotents: Dict[Tuple[GradedMatrixRing, Field], List[GMatrix]] = {}
        logger.info("Brute-force oracle initialized")

    def enumerate_homogeneous(self, ring: GradedMatrixRing, d: int, window: SearchWindow) -> Iterator[GMatrix]:
        """Every degree-d matrix over F_p, in lexicographic order of the coefficients"""
        field = Field(window.p)
        slots = admissible_positions(ring, d)
        base = GMatrix.zero(ring, field).entries
        for values in itertools.product(field.elements(), repeat=len(slots)):
            entries = base.copy()
            for ((i, j), exponent), c in zip(slots, values):
                entries[i, j] = LaurentPoly.monomial(field, exponent, c, ring.step)
            yield GMatrix(ring, field, entries)

    def degree_zero_idempotents(self, ring: GradedMatrixRing, field: Field) -> List[GMatrix]:
        key = (ring, field)
        if key not in self._idempotents:
            window = SearchWindow(p=field.characteristic, degree_lo=0, degree_hi=0)
            found = [e for e in self.enumerate_homogeneous(ring, 0, window) if e.is_idempotent()]
            logger.debug(f"{ring.label()} over {field.label}: {len(found)} degree-0 idempotents")
            self._idempotents[key] = found
        return self._idempotents[key]

    def _check_element(self, ring: GradedMatrixRing, x: GMatrix, window: SearchWindow) -> None:
        if x.ring != ring:
            raise ContractViolation(f"element is not in {ring.label()}")
        if x.field != Field(window.p):
            raise ContractViolation(f"element is not over F_{window.p}")
        _degree_of(x)

    def brute_graded_clean(self, ring: GradedMatrixRing, x: GMatrix, window: SearchWindow) -> SearchResult:
        """Least degree-0 idempotent e with x - e a graded unit"""
        self._check_element(ring, x, window)
        candidates = 0
        for e in self.degree_zero_idempotents(ring, x.field):
            candidates += 1
            if candidates > window.max_candidates:
                logger.warning(f"Clean search on {ring.label()} ran out of budget")
                return SearchResult(Outcome.INCONCLUSIVE, None, candidates - 1)
            u = x - e
            if gm_is_graded_unit(u):
                return SearchResult(Outcome.FOUND, {"u": u, "e": e}, candidates)
        return SearchResult(Outcome.NONE, None, candidates)

    def brute_graded_exchange(self, ring: GradedMatrixRing, x: GMatrix, window: SearchWindow) -> SearchResult:
        """Least degree-0 idempotent e with e in xR and 1 - e in (1 - x)R"""
        self._check_element(ring, x, window)
        candidates = 0
        for e in self.degree_zero_idempotents(ring, x.field):
            candidates += 1
            if candidates > window.max_candidates:
                logger.warning(f"Exchange search on {ring.label()} ran out of budget")
                return SearchResult(Outcome.INCONCLUSIVE, None, candidates - 1)
            r = homogeneous_membership(x, e)
            if r is None:
                continue
            s = one_minus_membership(x, e.one_minus())
            if s is None:
                continue
            return SearchResult(Outcome.FOUND, {"e": e, "r": r, "s": s}, candidates)
        return SearchResult(Outcome.NONE, None, candidates)

    def lift_idempotent_check(
        self,
        ring: GradedMatrixRing,
        x: GMatrix,
        generators: Sequence[GMatrix],
        window: SearchWindow,
    ) -> SearchResult:
        """Least degree-0 idempotent e with e - x in the graded right ideal of the generators.

        Every ring searched here has an exchange 0-component, so exhausting
        the idempotents without a lift is a counterexample and raises.
        """
        self._check_element(ring, x, window)
        for g in generators:
            self._check_element(ring, g, window)
        if not ideal_membership(generators, x - x * x):
            raise ContractViolation("x - x^2 is not in the ideal")
        candidates = 0
        for e in self.degree_zero_idempotents(ring, x.field):
            candidates += 1
            if candidates > window.max_candidates:
                logger.warning(f"Lift search on {ring.label()} ran out of budget")
                return SearchResult(Outcome.INCONCLUSIVE, None, candidates - 1)
            if ideal_membership(generators, e - x):
                return SearchResult(Outcome.FOUND, {"e": e}, candidates)
        raise InvariantViolation(f"no idempotent lift of {x.render()} in {ring.label()}")

    def sweep(self, ring: GradedMatrixRing, window: SearchWindow, kind: str) -> List[EvidenceRecord]:
        """Run one search kind on every homogeneous element of the window"""
        searches = {"clean": self.brute_graded_clean, "exchange": self.brute_graded_exchange}
        if kind not in searches:
            raise ContractViolation(f"unknown search kind {kind!r}; use clean or exchange")
        field = Field(window.p)
        records = []
        for d in window.degrees:
            for x in self.enumerate_homogeneous(ring, d, window):
                result = searches[kind](ring, x, window)
                records.append(evidence_record(ring, field, kind, x, result))
        counts = {outcome: sum(1 for r in records if r.outcome == outcome) for outcome in Outcome}
        logger.info(
            f"Swept {len(records)} elements of {ring.label()} over {field.label} ({kind}): "
            f"{counts[Outcome.FOUND]} found, {counts[Outcome.NONE]} none, "
            f"{counts[Outcome.INCONCLUSIVE]} inconclusive"
        )
        return records


def evidence_record(ring: GradedMatrixRing, field: Field, kind: str, x: GMatrix, result: SearchResult) -> EvidenceRecord:
    witness = None
    if result.witness is not None:
        witness = {name: value.render() for name, value in result.witness.items()}
    return EvidenceRecord(
        ring=ring.describe(),
        field=field.label,
        kind=kind,
        x=x.render(),
        degree=_degree_of(x),
        outcome=result.outcome,
        witness=witness,
        candidates=result.candidates,
    )


# Global instance
brute_force_oracle = BruteForceOracle()
