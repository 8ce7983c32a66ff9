"""Directed graph data models"""
from typing import Dict, List, Tuple
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator


class Edge(BaseModel):
    """A named edge e with source s(e) and range r(e)"""
    id: str = Field(..., description="Edge id")
    source: str = Field(..., description="Source vertex s(e)")
    range: str = Field(..., description="Range vertex r(e)")

    model_config = ConfigDict(frozen=True)


class Graph(BaseModel):
    """Finite directed graph with named vertices and (possibly parallel) edges"""
    vertices: Tuple[str, ...] = Field(..., description="Vertex ids")
    edges: Tuple[Edge, ...] = Field(default=(), description="Edges")

    model_config = ConfigDict(frozen=True)

    _edge_index: Dict[str, Edge] = PrivateAttr(default_factory=dict)
    _out: Dict[str, Tuple[str, ...]] = PrivateAttr(default_factory=dict)
    _in: Dict[str, Tuple[str, ...]] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_ids(self) -> "Graph":
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge id")
        clash = set(ids) & set(self.vertices)
        if clash:
            raise ValueError(f"ids used for both a vertex and an edge: {sorted(clash)}")
        known = set(self.vertices)
        for e in self.edges:
            for end in (e.source, e.range):
                if end not in known:
                    raise ValueError(f"edge {e.id} references unknown vertex {end}")
        return self

    def model_post_init(self, __context) -> None:
        self._edge_index = {e.id: e for e in self.edges}
        out: Dict[str, List[str]] = {v: [] for v in self.vertices}
        inc: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out.setdefault(e.source, []).append(e.id)
            inc.setdefault(e.range, []).append(e.id)
        self._out = {v: tuple(sorted(ids)) for v, ids in out.items()}
        self._in = {v: tuple(sorted(ids)) for v, ids in inc.items()}

    @classmethod
    def build(cls, vertices, edges) -> "Graph":
        """Graph from vertex ids and (id, source, range) triples"""
        return cls(
            vertices=tuple(vertices),
            edges=tuple(Edge(id=i, source=s, range=r) for i, s, r in edges),
        )

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def has_edge(self, e: str) -> bool:
        return e in self._edge_index

    def edge(self, e: str) -> Edge:
        try:
            return self._edge_index[e]
        except KeyError:
            raise KeyError(f"unknown edge {e}")

    def source(self, e: str) -> str:
        return self.edge(e).source

    def range_of(self, e: str) -> str:
        return self.edge(e).range

    def out_edges(self, v: str) -> Tuple[str, ...]:
        """Edges emitted by v, sorted by id"""
        return self._out[v]

    def in_edges(self, v: str) -> Tuple[str, ...]:
        return self._in[v]

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def special_edge(self, v: str) -> str:
        """Lexicographically greatest edge emitted by a regular vertex"""
        if not self._out[v]:
            raise ValueError(f"sink {v} has no special edge")
        return self._out[v][-1]


class Cycle(BaseModel):
    """A cycle stored in canonical rotation (least edge id first)"""
    edges: Tuple[str, ...] = Field(..., min_length=1, description="Edge sequence")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def canonical(cls, edges) -> "Cycle":
        edges = tuple(edges)
        start = edges.index(min(edges))
        return cls(edges=edges[start:] + edges[:start])

    @property
    def length(self) -> int:
        return len(self.edges)

    def rotations(self) -> List[Tuple[str, ...]]:
        return [self.edges[i:] + self.edges[:i] for i in range(len(self.edges))]

    def vertices(self, graph: Graph) -> List[str]:
        return [graph.source(e) for e in self.edges]

    def base(self, graph: Graph) -> str:
        return graph.source(self.edges[0])
