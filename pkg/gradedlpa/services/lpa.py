"""Arithmetic in the Leavitt path algebra L_K(E) on the normal-form basis pq*"""
import logging
import random
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from gradedlpa.errors import ContractViolation, StructuralError
from gradedlpa.models.graph import Graph
from gradedlpa.services.coeff import Field, Scalar, ScalarLike
from gradedlpa.services.graph import paths_ending_at

logger = logging.getLogger(__name__)

RawPath = Union[str, Sequence[str]]


class Monomial(NamedTuple):
    """pq* with r(p) = r(q) = anchor; an empty p or q stands for the anchor vertex"""
    p: Tuple[str, ...]
    q: Tuple[str, ...]
    anchor: str

    @property
    def degree(self) -> int:
        return len(self.p) - len(self.q)

    def sort_key(self):
        return (self.degree, len(self.p) + len(self.q), self.p, self.q, self.anchor)


class LeavittPathAlgebra:
    """L_K(E) for a finite graph E and an exact field K.

    At each regular vertex the special edge is the greatest edge id; the
    relation (CK2) is used only to eliminate pq* with p and q ending in the
    same special edge, which leaves the standard linear basis.
    """

    def __init__(self, graph: Graph, field: Field):
        self.graph = graph
        self.field = field

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LeavittPathAlgebra) and other.graph == self.graph and other.field == self.field

    def __hash__(self) -> int:
        return hash((self.graph, self.field))

    # Generators

    def zero(self) -> "LpaElement":
        return LpaElement(self, {})

    def vertex(self, v: str) -> "LpaElement":
        if not self.graph.has_vertex(v):
            raise StructuralError(f"unknown vertex {v}")
        return LpaElement(self, {Monomial((), (), v): self.field.one})

    def edge(self, e: str) -> "LpaElement":
        return LpaElement(self, {Monomial((e,), (), self._range(e)): self.field.one})

    def ghost(self, e: str) -> "LpaElement":
        return LpaElement(self, {Monomial((), (e,), self._range(e)): self.field.one})

    def path(self, edges: RawPath) -> "LpaElement":
        p, anchor = self._read_path(edges)
        return LpaElement(self, {Monomial(p, (), anchor): self.field.one})

    def monomial(self, p: RawPath, q: RawPath, coeff: ScalarLike = 1) -> "LpaElement":
        return self.normalize([(coeff, p, q)])

    def one(self) -> "LpaElement":
        """Sum of all vertices, the identity of a finite graph's algebra"""
        return LpaElement(self, {Monomial((), (), v): self.field.one for v in self.graph.vertices})

    # Path helpers

    def _range(self, e: str) -> str:
        if not self.graph.has_edge(e):
            raise StructuralError(f"unknown edge {e}")
        return self.graph.range_of(e)

    def _read_path(self, raw: RawPath) -> Tuple[Tuple[str, ...], str]:
        if isinstance(raw, str):
            if not self.graph.has_vertex(raw):
                raise StructuralError(f"unknown vertex {raw}")
            return (), raw
        edges = tuple(raw)
        if not edges:
            raise StructuralError("an empty path needs its vertex")
        for a, b in zip(edges, edges[1:]):
            if self._range(a) != self.graph.source(b):
                raise StructuralError(f"{a} {b} is not a path: r({a}) != s({b})")
        return edges, self._range(edges[-1])

    def start(self, path: Tuple[str, ...], anchor: str) -> str:
        return self.graph.source(path[0]) if path else anchor

    # Rewriting

    def is_reducible(self, m: Monomial) -> bool:
        if not m.p or not m.q or m.p[-1] != m.q[-1]:
            return False
        g = m.p[-1]
        return self.graph.special_edge(self.graph.source(g)) == g

    def _rewrite(self, m: Monomial, c: Scalar) -> List[Tuple[Monomial, Scalar]]:
        """p0 g g* q0* -> p0 q0* - sum over the other edges e at s(g) of p0 e e* q0*"""
        g = m.p[-1]
        u = self.graph.source(g)
        p0, q0 = m.p[:-1], m.q[:-1]
        out = [(Monomial(p0, q0, u), c)]
        for e in self.graph.out_edges(u):
            if e != g:
                out.append((Monomial(p0 + (e,), q0 + (e,), self.graph.range_of(e)), -c))
        return out

    def _reduce(self, items: Iterable[Tuple[Monomial, Scalar]], rng: Optional[random.Random] = None) -> Dict[Monomial, Scalar]:
        work = list(items)
        result: Dict[Monomial, Scalar] = {}
        while work:
            index = rng.randrange(len(work)) if rng else len(work) - 1
            m, c = work.pop(index)
            if self.field.is_zero(c):
                continue
            if self.is_reducible(m):
                work.extend(self._rewrite(m, c))
                continue
            result[m] = result[m] + c if m in result else c
        return {m: c for m, c in result.items() if not self.field.is_zero(c)}

    def normalize(self, raw: Iterable[Tuple[ScalarLike, RawPath, RawPath]], rng: Optional[random.Random] = None) -> "LpaElement":
        """Normal form of a formal combination sum c * p q*.

        Terms with r(p) != r(q) vanish. rng randomizes the rewrite order.
        """
        items = []
        for coeff, p_raw, q_raw in raw:
            p, rp = self._read_path(p_raw)
            q, rq = self._read_path(q_raw)
            if rp != rq:
                continue
            items.append((Monomial(p, q, rp), self.field(coeff)))
        return LpaElement(self, self._reduce(items, rng))

    def multiply_monomials(self, a: Monomial, b: Monomial) -> Optional[Monomial]:
        """(pq*)(rs*) before (CK2) rewriting, None when (CK1)/(V) kill it"""
        if self.start(a.q, a.anchor) != self.start(b.p, b.anchor):
            return None
        q, r = a.q, b.p
        if r[:len(q)] == q:
            return Monomial(a.p + r[len(q):], b.q, b.anchor)
        if q[:len(r)] == r:
            return Monomial(a.p, b.q + q[len(r):], a.anchor)
        return None

    # Enumeration

    def basis_monomials(self, degree: int, max_length: int) -> List[Monomial]:
        """Normal-form monomials of the given degree with |p|, |q| <= max_length"""
        found = []
        for w in self.graph.vertices:
            paths = paths_ending_at(self.graph, w, max_length)
            by_length: Dict[int, List[Tuple[str, ...]]] = {}
            for path in paths:
                by_length.setdefault(len(path), []).append(path)
            for p in paths:
                for q in by_length.get(len(p) - degree, []):
                    m = Monomial(p, q, w)
                    if not self.is_reducible(m):
                        found.append(m)
        return sorted(found, key=Monomial.sort_key)

    def local_unit(self, elements: Iterable["LpaElement"]) -> "LpaElement":
        """Sum of the vertices touched by the given elements"""
        touched = set()
        for a in elements:
            self._check(a)
            for m in a.terms:
                touched.add(m.anchor)
                for e in m.p + m.q:
                    touched.add(self.graph.source(e))
                    touched.add(self.graph.range_of(e))
        return LpaElement(self, {Monomial((), (), v): self.field.one for v in sorted(touched)})

    def path_projection(self, edges: RawPath) -> "LpaElement":
        """pp* in normal form"""
        return self.monomial(edges, edges)

    def emits_only_path_edges(self, edges: Sequence[str]) -> bool:
        """Every vertex s(e_i) along the path emits only e_i"""
        return all(self.graph.out_edges(self.graph.source(e)) == (e,) for e in edges)

    def _check(self, a: "LpaElement") -> None:
        if not isinstance(a, LpaElement) or a.algebra != self:
            raise StructuralError("elements of different Leavitt path algebras cannot be combined")


class LpaElement:
    """K-linear combination of normal-form monomials"""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittPathAlgebra, terms: Dict[Monomial, Scalar]):
        self.algebra = algebra
        self.terms = terms

    @property
    def graph(self) -> Graph:
        return self.algebra.graph

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LpaElement") -> "LpaElement":
        self.algebra._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        field = self.algebra.field
        return LpaElement(self.algebra, {m: c for m, c in terms.items() if not field.is_zero(c)})

    def __neg__(self) -> "LpaElement":
        return LpaElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LpaElement") -> "LpaElement":
        return self + (-other)

    def __mul__(self, other: "LpaElement") -> "LpaElement":
        self.algebra._check(other)
        products = []
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = self.algebra.multiply_monomials(ma, mb)
                if m is not None:
                    products.append((m, ca * cb))
        return LpaElement(self.algebra, self.algebra._reduce(products))

    def scale(self, c: ScalarLike) -> "LpaElement":
        value = self.algebra.field(c)
        if self.algebra.field.is_zero(value):
            return self.algebra.zero()
        return LpaElement(self.algebra, {m: v * value for m, v in self.terms.items()})

    def star(self) -> "LpaElement":
        return LpaElement(self.algebra, {Monomial(m.q, m.p, m.anchor): c for m, c in self.terms.items()})

    def component(self, d: int) -> "LpaElement":
        return LpaElement(self.algebra, {m: c for m, c in self.terms.items() if m.degree == d})

    def degrees(self) -> List[int]:
        return sorted({m.degree for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_idempotent(self) -> bool:
        return self * self == self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LpaElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        field = self.algebra.field
        return hash((self.algebra, frozenset((m, field.render(c)) for m, c in self.terms.items())))

    def render(self) -> str:
        if not self.terms:
            return "0"
        field = self.algebra.field
        parts = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            factors = list(m.p) + [f"{e}*" for e in reversed(m.q)]
            word = " ".join(factors) if factors else m.anchor
            coeff = field.render(self.terms[m])
            if coeff == "1":
                parts.append(word)
            elif coeff == "-1":
                parts.append(f"-{word}")
            else:
                parts.append(f"{coeff} {word}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LpaElement({self.render()})"


def lpa_mul(a: LpaElement, b: LpaElement) -> LpaElement:
    return a * b


def lpa_normalize(algebra: LeavittPathAlgebra, raw, rng: Optional[random.Random] = None) -> LpaElement:
    return algebra.normalize(raw, rng)


def lpa_involution(a: LpaElement) -> LpaElement:
    return a.star()


def lpa_component(a: LpaElement, d: int) -> LpaElement:
    return a.component(d)


def lpa_is_idempotent(a: LpaElement) -> bool:
    return a.is_idempotent()


def lpa_corner(a: LpaElement, idem: LpaElement) -> LpaElement:
    if not idem.is_idempotent():
        raise ContractViolation(f"corner needs an idempotent, got {idem.render()}")
    return idem * a * idem
