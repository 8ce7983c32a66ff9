"""Graph-property deciders: cycles, exits, Condition (K), sinks and path-length distribution"""
import enum
import itertools
import logging
from collections import Counter
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from gradedlpa.errors import ContractViolation, InvariantViolation
from gradedlpa.models.graph import Cycle, Graph

logger = logging.getLogger(__name__)

Path = Tuple[str, ...]


class VertexKind(str, enum.Enum):
    SINK = "sink"
    REGULAR = "regular"


class GraphShape(str, enum.Enum):
    DISJOINT_VERTICES = "disjoint_vertices"
    SINGLE_LOOP = "single_loop"
    OTHER = "other"


def graph_to_networkx(g: Graph) -> nx.MultiDiGraph:
    """Multigraph with one keyed edge per graph edge"""
    G = nx.MultiDiGraph()
    G.add_nodes_from(g.vertices)
    for e in g.edges:
        G.add_edge(e.source, e.range, key=e.id)
    return G


def classify_vertices(g: Graph) -> Dict[str, VertexKind]:
    return {v: VertexKind.SINK if g.is_sink(v) else VertexKind.REGULAR for v in g.vertices}


@lru_cache(maxsize=512)
def enumerate_cycles(g: Graph) -> Tuple[Cycle, ...]:
    """All cycles up to rotation, sorted by (length, edges).

    Vertex cycles come from networkx; parallel edges between consecutive
    vertices multiply out into distinct edge cycles.
    """
    simple = nx.DiGraph()
    simple.add_nodes_from(g.vertices)
    parallel: Dict[Tuple[str, str], List[str]] = {}
    for e in g.edges:
        simple.add_edge(e.source, e.range)
        parallel.setdefault((e.source, e.range), []).append(e.id)

    found = set()
    for vertex_cycle in nx.simple_cycles(simple):
        hops = [
            sorted(parallel[(vertex_cycle[i], vertex_cycle[(i + 1) % len(vertex_cycle)])])
            for i in range(len(vertex_cycle))
        ]
        for choice in itertools.product(*hops):
            found.add(Cycle.canonical(choice))

    cycles = tuple(sorted(found, key=lambda c: (c.length, c.edges)))
    logger.debug(f"Found {len(cycles)} cycles")
    return cycles


def cycles_through(g: Graph) -> Dict[str, int]:
    counts = {v: 0 for v in g.vertices}
    for c in enumerate_cycles(g):
        for v in c.vertices(g):
            counts[v] += 1
    return counts


def is_acyclic(g: Graph) -> bool:
    return nx.is_directed_acyclic_graph(graph_to_networkx(g))


def is_no_exit(g: Graph) -> bool:
    """No vertex on a cycle emits an edge outside that cycle"""
    for c in enumerate_cycles(g):
        for v in c.vertices(g):
            if len(g.out_edges(v)) != 1:
                return False
    return True


def has_condition_K(g: Graph) -> bool:
    """Every vertex on a cycle lies on at least two cycles"""
    return all(count != 1 for count in cycles_through(g).values())


def sinks_isolated(g: Graph) -> bool:
    return all(not g.in_edges(v) for v in g.vertices if g.is_sink(v))


def graph_shape(g: Graph) -> GraphShape:
    if not g.edges:
        return GraphShape.DISJOINT_VERTICES
    if len(g.vertices) == 1 and len(g.edges) == 1:
        return GraphShape.SINGLE_LOOP
    return GraphShape.OTHER


def contains_cycle(path: Sequence[str], cycle: Cycle) -> bool:
    """Some rotation of the cycle occurs contiguously in the path"""
    m = cycle.length
    if len(path) < m:
        return False
    windows = {tuple(path[i:i + m]) for i in range(len(path) - m + 1)}
    return any(rotation in windows for rotation in cycle.rotations())


def paths_ending_at(g: Graph, v: str, max_length: int) -> List[Path]:
    """All paths of length <= max_length with range v, shortest first"""
    result: List[Path] = [()]
    frontier: List[Tuple[Path, str]] = [((), v)]
    for _ in range(max_length):
        extended = []
        for path, start in frontier:
            for e in g.in_edges(start):
                extended.append(((e,) + path, g.source(e)))
        result.extend(p for p, _ in extended)
        frontier = extended
    return result


def cycle_entry_paths(g: Graph, cycle: Cycle, base: str) -> List[Path]:
    """Paths ending at base that do not contain the cycle.

    Requires a finite no-exit graph, where this set is finite: off-cycle
    ancestors form an acyclic region and at most m-1 cycle edges end a path.
    """
    if base not in cycle.vertices(g):
        raise ContractViolation(f"{base} is not on cycle {list(cycle.edges)}")
    bound = len(g.edges) + cycle.length
    result: List[Path] = []
    stack: List[Tuple[Path, str]] = [((), base)]
    while stack:
        path, start = stack.pop()
        result.append(path)
        for e in g.in_edges(start):
            candidate = (e,) + path
            if contains_cycle(candidate, cycle):
                continue
            if len(candidate) > bound:
                raise InvariantViolation(f"path enumeration at {base} did not terminate")
            stack.append((candidate, g.source(e)))
    return sorted(result, key=lambda p: (len(p), p))


def sink_paths(g: Graph, sink: str) -> List[Path]:
    """All paths ending at a sink of a finite no-exit graph"""
    # no cycle reaches a sink in a no-exit graph, so path lengths stay below |V|
    return paths_ending_at(g, sink, len(g.vertices))


def _require_finite_no_exit(g: Graph, what: str) -> None:
    if not is_no_exit(g):
        raise ContractViolation(f"{what} requires finite no-exit graph")


def check_edl(g: Graph, base_choice: Dict[Cycle, str] = None) -> bool:
    """Equally distributed path lengths modulo each cycle length.

    base_choice optionally fixes the base vertex per cycle; the default is
    the source of the cycle's first edge.
    """
    _require_finite_no_exit(g, "EDL")
    for c in enumerate_cycles(g):
        base = (base_choice or {}).get(c, c.base(g))
        residues = Counter(len(p) % c.length for p in cycle_entry_paths(g, c, base))
        counts = {residues.get(i, 0) for i in range(c.length)}
        if len(counts) != 1:
            logger.debug(f"EDL fails at cycle {list(c.edges)}: {dict(residues)}")
            return False
    return True


check_EDL = check_edl


def is_acyclic_or_single_cycle_union(g: Graph) -> bool:
    """Every connected component is acyclic or is exactly one cycle"""
    G = graph_to_networkx(g)
    cycles = enumerate_cycles(g)
    for component in nx.weakly_connected_components(G):
        inside = [c for c in cycles if c.base(g) in component]
        if not inside:
            continue
        if len(inside) > 1:
            return False
        c = inside[0]
        edges_here = {e.id for e in g.edges if e.source in component}
        if set(c.edges) != edges_here or set(c.vertices(g)) != set(component):
            return False
    return True
