"""Unit tests for graph models and graph-property deciders"""
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from gradedlpa.errors import ContractViolation
from gradedlpa.models.graph import Cycle, Graph
from gradedlpa.services.graph import (
    GraphShape,
    check_edl,
    contains_cycle,
    cycle_entry_paths,
    cycles_through,
    enumerate_cycles,
    graph_shape,
    graph_to_networkx,
    has_condition_K,
    is_acyclic,
    is_acyclic_or_single_cycle_union,
    is_no_exit,
    paths_ending_at,
    sink_paths,
    sinks_isolated,
)

from tests.conftest import small_graphs


class TestGraphModel:
    """Test graph construction and validation"""

    def test_unknown_endpoint(self):
        """Test an edge into an undeclared vertex"""
        with pytest.raises(ValueError):
            Graph.build(["v"], [("e", "v", "w")])

    def test_duplicate_ids(self):
        """Test duplicate and clashing ids"""
        with pytest.raises(ValueError):
            Graph.build(["v", "v"], [])
        with pytest.raises(ValueError):
            Graph.build(["v"], [("e", "v", "v"), ("e", "v", "v")])
        with pytest.raises(ValueError):
            Graph.build(["v", "e"], [("e", "v", "v")])

    def test_adjacency(self, rose, single_edge):
        """Test out-edges, in-edges and special edges"""
        assert rose.out_edges("v") == ("e", "f")
        assert rose.special_edge("v") == "f"
        assert single_edge.in_edges("v") == ("e",)
        assert single_edge.is_sink("v")
        with pytest.raises(ValueError):
            single_edge.special_edge("v")

    def test_hashable(self, twocycle):
        """Test that equal graphs hash equally"""
        again = Graph.build(["v", "w"], [("e", "v", "w"), ("f", "w", "v")])
        assert again == twocycle
        assert hash(again) == hash(twocycle)

    def test_networkx_view(self, rose):
        """Test the multigraph keeps parallel loops"""
        G = graph_to_networkx(rose)
        assert G.number_of_edges("v", "v") == 2


class TestCycles:
    """Test cycle enumeration"""

    def test_rose_has_two_loops(self, rose):
        """Test that only the two loops are cycles of the rose"""
        assert [c.edges for c in enumerate_cycles(rose)] == [("e",), ("f",)]

    def test_twocycle(self, twocycle, twocycle_entrance):
        """Test canonical rotation"""
        assert [c.edges for c in enumerate_cycles(twocycle)] == [("e", "f")]
        assert [c.edges for c in enumerate_cycles(twocycle_entrance)] == [("e", "f")]
        assert Cycle.canonical(("f", "e")).edges == ("e", "f")

    def test_acyclic(self, single_edge, two_vertices, loop):
        """Test acyclic graphs have no cycles"""
        assert enumerate_cycles(single_edge) == ()
        assert is_acyclic(two_vertices)
        assert not is_acyclic(loop)

    def test_cycles_through(self, rose, twocycle_entrance):
        """Test counting cycles per vertex"""
        assert cycles_through(rose) == {"v": 2}
        assert cycles_through(twocycle_entrance) == {"u": 1, "v": 1, "w": 0}

    def test_contains_cycle(self):
        """Test matching any rotation inside a path"""
        cycle = Cycle.canonical(("e", "f"))
        assert contains_cycle(("g", "f", "e"), cycle)
        assert not contains_cycle(("g", "e"), cycle)


class TestGraphProperties:
    """Test exits, Condition (K), sinks and shapes"""

    def test_no_exit(self, loop, rose, twocycle, twocycle_entrance, single_edge):
        """Test the no-exit condition"""
        assert is_no_exit(loop)
        assert not is_no_exit(rose)
        assert is_no_exit(twocycle)
        assert is_no_exit(twocycle_entrance)
        assert is_no_exit(single_edge)

    def test_condition_k(self, rose, loop, twocycle, two_vertices):
        """Test Condition (K)"""
        assert has_condition_K(rose)
        assert has_condition_K(two_vertices)
        assert not has_condition_K(loop)
        assert not has_condition_K(twocycle)

    def test_sinks_isolated(self, single_edge, two_vertices):
        """Test sinks that receive edges"""
        assert not sinks_isolated(single_edge)
        assert sinks_isolated(two_vertices)

    def test_shape(self, two_vertices, loop, twocycle):
        """Test the graded-clean shapes"""
        assert graph_shape(two_vertices) == GraphShape.DISJOINT_VERTICES
        assert graph_shape(loop) == GraphShape.SINGLE_LOOP
        assert graph_shape(twocycle) == GraphShape.OTHER

    def test_single_cycle_union(self, twocycle, twocycle_entrance, single_edge):
        """Test components that are acyclic or exactly one cycle"""
        assert is_acyclic_or_single_cycle_union(twocycle)
        assert is_acyclic_or_single_cycle_union(single_edge)
        assert not is_acyclic_or_single_cycle_union(twocycle_entrance)
        loop_and_vertex = Graph.build(["v", "w"], [("e", "v", "v")])
        assert is_acyclic_or_single_cycle_union(loop_and_vertex)


class TestPaths:
    """Test path enumeration and the EDL condition"""

    def test_paths_ending_at(self, single_edge):
        """Test bounded path enumeration"""
        assert paths_ending_at(single_edge, "v", 2) == [(), ("e",)]
        assert sink_paths(single_edge, "v") == [(), ("e",)]

    def test_cycle_entry_paths(self, twocycle_entrance):
        """Test paths that avoid the cycle, at both bases"""
        (cycle,) = enumerate_cycles(twocycle_entrance)
        assert cycle_entry_paths(twocycle_entrance, cycle, "u") == [(), ("e",), ("g", "e")]
        assert cycle_entry_paths(twocycle_entrance, cycle, "v") == [(), ("f",), ("g",)]

    def test_entry_paths_need_cycle_vertex(self, twocycle_entrance):
        """Test a base off the cycle"""
        (cycle,) = enumerate_cycles(twocycle_entrance)
        with pytest.raises(ContractViolation):
            cycle_entry_paths(twocycle_entrance, cycle, "w")

    def test_edl(self, loop, twocycle, twocycle_entrance):
        """Test equally distributed path lengths"""
        assert check_edl(loop)
        assert check_edl(twocycle)
        assert not check_edl(twocycle_entrance)

    def test_edl_base_choice(self, twocycle_entrance):
        """Test that moving the base does not change the answer"""
        (cycle,) = enumerate_cycles(twocycle_entrance)
        assert not check_edl(twocycle_entrance, {cycle: "u"})

    def test_edl_with_entrance_at_each_vertex(self):
        """Test a two-cycle entered once at each vertex has equally distributed lengths"""
        g = Graph.build(
            ["v", "u", "w", "x"],
            [("e", "v", "u"), ("f", "u", "v"), ("g", "w", "v"), ("h", "x", "u")],
        )
        (cycle,) = enumerate_cycles(g)
        assert sorted(len(p) for p in cycle_entry_paths(g, cycle, "v")) == [0, 1, 1, 2]
        assert sorted(len(p) for p in cycle_entry_paths(g, cycle, "u")) == [0, 1, 1, 2]
        assert check_edl(g)
        assert check_edl(g, {cycle: "u"})

    def test_edl_needs_no_exit(self, rose):
        """Test the precondition"""
        with pytest.raises(ContractViolation):
            check_edl(rose)


class TestRandomGraphs:
    """Property tests on small random graphs"""

    @hyp_settings(max_examples=80, deadline=None)
    @given(small_graphs())
    def test_cycles_are_closed_and_canonical(self, g):
        """Test every enumerated cycle is a closed path starting at its least edge"""
        for c in enumerate_cycles(g):
            assert c.edges[0] == min(c.edges)
            assert len(set(c.edges)) == c.length
            for a, b in zip(c.edges, c.edges[1:] + c.edges[:1]):
                assert g.range_of(a) == g.source(b)

    @hyp_settings(max_examples=80, deadline=None)
    @given(small_graphs())
    def test_acyclic_means_no_cycles(self, g):
        """Test agreement between networkx acyclicity and cycle enumeration"""
        assert is_acyclic(g) == (len(enumerate_cycles(g)) == 0)

    @hyp_settings(max_examples=80, deadline=None)
    @given(small_graphs(), st.data())
    def test_cycles_follow_edge_relabeling(self, g, data):
        """Test renaming edges renames the enumerated cycles and nothing else"""
        order = data.draw(st.permutations(range(len(g.edges))))
        rename = {e.id: f"x{k}" for e, k in zip(g.edges, order)}
        relabeled = Graph.build(g.vertices, [(rename[e.id], e.source, e.range) for e in g.edges])
        expected = {Cycle.canonical(tuple(rename[e] for e in c.edges)) for c in enumerate_cycles(g)}
        cycles = enumerate_cycles(relabeled)
        assert len(cycles) == len(expected)
        assert set(cycles) == expected

    @hyp_settings(max_examples=80, deadline=None)
    @given(small_graphs())
    def test_no_exit_cycles_break_condition_k(self, g):
        """Test a cycle without exits never has a second return path"""
        if is_no_exit(g) and not is_acyclic(g):
            assert not has_condition_K(g)

    @hyp_settings(max_examples=80, deadline=None)
    @given(small_graphs())
    def test_edl_independent_of_base(self, g):
        """Test every vertex of a cycle gives the same EDL answer as the default base"""
        if not is_no_exit(g):
            return
        expected = check_edl(g)
        for c in enumerate_cycles(g):
            for v in c.vertices(g):
                assert check_edl(g, {c: v}) == expected
