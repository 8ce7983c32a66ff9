"""Parsers for .graph documents and element expressions, with source locations"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from gradedlpa.cli.grammar import ELEMENT_GRAMMAR, GRAPH_GRAMMAR
from gradedlpa.errors import DSLSyntaxError, SourceLocation
from gradedlpa.models.graph import Graph
from gradedlpa.services.coeff import Field
from gradedlpa.services.lpa import LeavittPathAlgebra, LpaElement

logger = logging.getLogger(__name__)

_graph_parser = Lark(GRAPH_GRAMMAR, parser="lalr", propagate_positions=True)
_element_parser = Lark(ELEMENT_GRAMMAR, parser="lalr", propagate_positions=True)


@dataclass(frozen=True)
class GraphDoc:
    """A parsed graph and where each id was declared"""
    graph: Graph
    locations: Dict[str, SourceLocation] = field(default_factory=dict)
    source: Optional[str] = None


def _location(token: Token, source: Optional[str]) -> SourceLocation:
    return SourceLocation(line=token.line, column=token.column, source=source)


def _syntax_error(exc: UnexpectedInput, text: str, source: Optional[str]) -> DSLSyntaxError:
    line, column = getattr(exc, "line", -1), getattr(exc, "column", -1)
    if line is None or line < 1:
        lines = text.split("\n")
        line, column = len(lines), len(lines[-1]) + 1
    location = SourceLocation(line=line, column=column, source=source)
    if isinstance(exc, UnexpectedCharacters):
        return DSLSyntaxError(f"unexpected character {exc.char!r}", location)
    if isinstance(exc, UnexpectedEOF):
        return DSLSyntaxError("unexpected end of input", location, hint=f"expected {', '.join(sorted(exc.expected))}")
    if isinstance(exc, UnexpectedToken):
        return DSLSyntaxError(
            f"unexpected {exc.token.type} {str(exc.token)!r}",
            location,
            hint=f"expected {', '.join(sorted(exc.expected))}",
        )
    return DSLSyntaxError(str(exc), location)


class _GraphStatements(Transformer):
    def start(self, items):
        return list(items)

    def vertex_stmt(self, items):
        (name,) = items
        return ("vertex", name)

    def edge_stmt(self, items):
        name, src, rng = items
        return ("edge", name, src, rng)


def parse_graph(text: str, source: Optional[str] = None) -> GraphDoc:
    """
    Parse a graph document

    Args:
        text: DSL text
        source: File name used in diagnostics

    Returns:
        GraphDoc with the graph and declaration sites

    Raises:
        DSLSyntaxError: On syntax errors, duplicate ids and unknown vertices
    """
    try:
        statements = _GraphStatements().transform(_graph_parser.parse(text))
    except UnexpectedInput as exc:
        raise _syntax_error(exc, text, source) from exc

    locations: Dict[str, SourceLocation] = {}
    vertices: List[str] = []
    edges: List[Tuple[str, str, str]] = []
    for stmt in statements:
        name = stmt[1]
        if str(name) in locations:
            raise DSLSyntaxError(
                f"duplicate id {name}",
                _location(name, source),
                hint=f"first declared at {locations[str(name)]}",
            )
        locations[str(name)] = _location(name, source)
        if stmt[0] == "vertex":
            vertices.append(str(name))
        else:
            edges.append((str(name), str(stmt[2]), str(stmt[3])))

    declared = set(vertices)
    for stmt in statements:
        if stmt[0] != "edge":
            continue
        for end in stmt[2:]:
            if str(end) not in declared:
                raise DSLSyntaxError(f"unknown vertex {end}", _location(end, source))

    graph = Graph.build(vertices, edges)
    logger.debug(f"Parsed graph with {len(vertices)} vertices and {len(edges)} edges")
    return GraphDoc(graph=graph, locations=locations, source=source)


def parse_graph_file(path: Union[str, Path]) -> GraphDoc:
    path = Path(path)
    return parse_graph(path.read_text(encoding="utf-8"), source=str(path))


def render_graph(g: Graph) -> str:
    """DSL text that parses back to g"""
    lines = [f"vertex {v};" for v in g.vertices]
    lines += [f"edge {e.id}: {e.source} -> {e.range};" for e in g.edges]
    return "\n".join(lines) + "\n"


class _Coeff(NamedTuple):
    num: int
    den: int


class _ElementTerms(Transformer):
    def start(self, items):
        terms = [items[0]]
        rest = items[1:]
        for sign, term in zip(rest[::2], rest[1::2]):
            terms.append((str(sign) == "-",) + term[1:])
        return terms

    def first_term(self, items):
        if len(items) == 2:
            return (str(items[0]) == "-",) + items[1][1:]
        return items[0]

    def term(self, items):
        coeff = _Coeff(1, 1)
        if items and isinstance(items[0], _Coeff):
            coeff, items = items[0], items[1:]
        return (False, coeff, list(items))

    def coeff(self, items):
        return _Coeff(int(items[0]), int(items[1]) if len(items) == 2 else 1)

    def factor(self, items):
        return (items[0], len(items) == 2)


def parse_element(text: str, g: Graph, field: Optional[Field] = None) -> LpaElement:
    """Normal form of an expression such as "2 e f* - v" in L_K(E)"""
    algebra = LeavittPathAlgebra(g, field or Field(0))
    try:
        terms = _ElementTerms().transform(_element_parser.parse(text))
    except UnexpectedInput as exc:
        raise _syntax_error(exc, text, None) from exc

    total = algebra.zero()
    for negative, coeff, factors in terms:
        if coeff.den == 0:
            raise DSLSyntaxError(f"zero denominator in {coeff.num}/0")
        value = algebra.one()
        for name, ghost in factors:
            value = value * _generator(algebra, name, ghost)
        scalar = Fraction(coeff.num, coeff.den)
        try:
            total = total + value.scale(-scalar if negative else scalar)
        except ZeroDivisionError as exc:
            raise DSLSyntaxError(f"{scalar} is not defined in {algebra.field.label}") from exc
    return total


def _generator(algebra: LeavittPathAlgebra, name: Token, ghost: bool) -> LpaElement:
    g = algebra.graph
    if g.has_vertex(str(name)):
        return algebra.vertex(str(name))
    if g.has_edge(str(name)):
        return algebra.ghost(str(name)) if ghost else algebra.edge(str(name))
    raise DSLSyntaxError(f"unknown vertex or edge {name}", _location(name, None))
