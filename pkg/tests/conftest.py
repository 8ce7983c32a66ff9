"""Shared fixtures: the sample graphs under data/graphs"""
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gradedlpa.models.graph import Graph

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "graphs"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

SAMPLE_GRAPHS = ["loop", "rose", "twocycle", "two_vertices", "single_edge", "twocycle_entrance"]
NO_EXIT_GRAPHS = ["loop", "twocycle", "two_vertices", "single_edge", "twocycle_entrance"]


@st.composite
def small_graphs(draw, max_vertices=4, max_edges=5):
    """Random graphs on v0..v(n-1) with parallel edges and loops allowed"""
    n = draw(st.integers(1, max_vertices))
    vertices = [f"v{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    edges = [(f"e{k}", vertices[s], vertices[r]) for k, (s, r) in enumerate(pairs)]
    return Graph.build(vertices, edges)


@pytest.fixture
def loop():
    """One vertex with one loop: L(E) = K[x, x^-1]"""
    return Graph.build(["v"], [("e", "v", "v")])


@pytest.fixture
def rose():
    """One vertex with two loops"""
    return Graph.build(["v"], [("e", "v", "v"), ("f", "v", "v")])


@pytest.fixture
def twocycle():
    """Cycle of length two without entrances"""
    return Graph.build(["v", "w"], [("e", "v", "w"), ("f", "w", "v")])


@pytest.fixture
def two_vertices():
    """Two isolated vertices"""
    return Graph.build(["u", "v"], [])


@pytest.fixture
def single_edge():
    """u -> v, so L(E) = M_2(K)"""
    return Graph.build(["u", "v"], [("e", "u", "v")])


@pytest.fixture
def twocycle_entrance():
    """Cycle of length two entered once from w"""
    return Graph.build(["u", "v", "w"], [("e", "v", "u"), ("f", "u", "v"), ("g", "w", "v")])
