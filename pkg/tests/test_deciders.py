"""Unit tests for graph-property deciders and the structural decomposition"""
import itertools
import json
import logging

import pytest
from hypothesis import given, settings as hyp_settings

from gradedlpa.cli.parser import parse_graph_file
from gradedlpa.errors import ContractViolation, InvariantViolation
from gradedlpa.models.graph import Graph
from gradedlpa.models.report import PROPERTY_NAMES, Verdict, VerdictValue
from gradedlpa.models.ring import GradedMatrixRing
from gradedlpa.services.deciders import (
    CLEAN_OPEN,
    GRADED_EXCHANGE_NEEDS_NO_EXIT,
    GRADED_EXCHANGE_OPEN,
    GRADED_EXCHANGE_SUFFICIENT,
    IMPLICATIONS,
    audit_implications,
    cycle_summand,
    graded_dimension,
    graph_property_decider,
    lpa_graded_dimension,
)
from gradedlpa.services.gmatrix import graded_exchange_ring, is_graded_clean_ring
from gradedlpa.services.graph import enumerate_cycles, is_no_exit

from tests.conftest import DATA_DIR, GOLDEN_DIR, NO_EXIT_GRAPHS, SAMPLE_GRAPHS, small_graphs


def _load(name):
    return parse_graph_file(DATA_DIR / f"{name}.graph").graph


def _no_exit_graphs(max_vertices, max_edges):
    """Every no-exit graph on v0..v(n-1), up to the order of parallel edges"""
    for n in range(1, max_vertices + 1):
        vertices = [f"v{i}" for i in range(n)]
        pairs = list(itertools.product(range(n), repeat=2))
        for k in range(max_edges + 1):
            for chosen in itertools.combinations_with_replacement(pairs, k):
                edges = [(f"e{i}", vertices[s], vertices[r]) for i, (s, r) in enumerate(chosen)]
                g = Graph.build(vertices, edges)
                if is_no_exit(g):
                    yield g


class TestPropertyReports:
    """Test the eighteen verdicts per graph"""

    @pytest.mark.parametrize("name", SAMPLE_GRAPHS)
    def test_golden_reports(self, name):
        """Test reports match the stored JSON byte for byte"""
        report = graph_property_decider.analyze(_load(name))
        text = json.dumps(report.as_json(1), indent=2, ensure_ascii=False) + "\n"
        assert text == (GOLDEN_DIR / f"{name}.json").read_text(encoding="utf-8")

    @pytest.mark.parametrize("name", SAMPLE_GRAPHS)
    def test_every_property_present(self, name):
        """Test the report covers every property with a citation"""
        report = graph_property_decider.analyze(_load(name))
        assert list(report.properties) == PROPERTY_NAMES
        assert all(v.citation for v in report.properties.values())
        assert report.unital

    def test_loop(self, loop):
        """Test K[x, x^-1]: graded clean, not regular"""
        report = graph_property_decider.analyze(loop)
        assert report.verdict("Reg") == VerdictValue.NO
        assert report.verdict("Cln_gr") == VerdictValue.YES
        assert report.verdict("UR_gr") == VerdictValue.YES
        assert report.properties["Exch_gr"].citation == GRADED_EXCHANGE_SUFFICIENT

    def test_rose(self, rose):
        """Test Condition (K) without the no-exit condition"""
        report = graph_property_decider.analyze(rose)
        assert report.verdict("Exch") == VerdictValue.YES
        assert report.verdict("Cln") == VerdictValue.UNKNOWN
        assert report.properties["Cln"].citation == CLEAN_OPEN
        assert report.verdict("DF_gr") == VerdictValue.NO
        assert report.properties["Exch_gr"].citation == GRADED_EXCHANGE_NEEDS_NO_EXIT
        assert report.decomposition is None

    def test_entrance_breaks_edl(self, twocycle_entrance):
        """Test an entrance that repeats a residue"""
        report = graph_property_decider.analyze(twocycle_entrance)
        assert report.verdict("UR_gr") == VerdictValue.NO
        assert report.verdict("sr=1_gr") == VerdictValue.NO
        assert report.verdict("DF_gr") == VerdictValue.YES
        assert report.verdict("Exch_gr") == VerdictValue.UNKNOWN
        assert report.properties["Exch_gr"].citation == GRADED_EXCHANGE_OPEN

    def test_entrances_at_both_vertices_keep_edl(self):
        """Test entrances that fill both residues give graded unit-regularity"""
        g = Graph.build(
            ["v", "u", "w", "x"],
            [("e", "v", "u"), ("f", "u", "v"), ("g", "w", "v"), ("h", "x", "u")],
        )
        report = graph_property_decider.analyze(g)
        assert report.verdict("UR_gr") == VerdictValue.YES
        assert report.verdict("sr=1_gr") == VerdictValue.YES
        assert graph_property_decider.decompose(g) == [GradedMatrixRing.over_laurent(2, (0, 1, 1, 2))]

    def test_unknowns_logged(self, rose, caplog):
        """Test a warning names undecided properties"""
        with caplog.at_level(logging.WARNING, logger="gradedlpa.services.deciders"):
            graph_property_decider.analyze(rose)
        assert "Undecided properties: Cln" in caplog.text


class TestImplications:
    """Test the implication audit"""

    def test_reports_pass_audit(self, two_vertices, loop):
        """Test consistent reports"""
        audit_implications(graph_property_decider.analyze(two_vertices))
        audit_implications(graph_property_decider.analyze(loop))

    def test_violation_detected(self, two_vertices):
        """Test a report with UR but not Reg"""
        report = graph_property_decider.analyze(two_vertices)
        properties = dict(report.properties)
        properties["Reg"] = Verdict.no("broken")
        broken = report.model_copy(update={"properties": properties})
        with pytest.raises(InvariantViolation):
            audit_implications(broken)

    def test_graded_to_zero_component(self):
        """Test every graded property implies its zero-component version"""
        for name in ("Reg", "UR", "sr=1", "DF", "Cln", "Exch"):
            assert ((f"{name}_gr",), f"{name}_eps") in IMPLICATIONS


class TestDecomposition:
    """Test the graded matrix summands of no-exit graphs"""

    def test_examples(self, loop, twocycle, single_edge, two_vertices, twocycle_entrance):
        """Test summands of the sample graphs"""
        decide = graph_property_decider.decompose
        assert decide(loop) == [GradedMatrixRing.over_laurent(1, (0,))]
        assert decide(twocycle) == [GradedMatrixRing.over_laurent(2, (0, 1))]
        assert decide(single_edge) == [GradedMatrixRing.over_field((0, 1))]
        assert decide(two_vertices) == [GradedMatrixRing.over_field((0,))] * 2
        assert decide(twocycle_entrance) == [GradedMatrixRing.over_laurent(2, (0, 1, 1))]

    def test_sinks_and_cycle_together(self):
        """Test a sink summand listed before a cycle summand"""
        combined = Graph.build(
            ["a", "v", "z", "s"],
            [("e", "v", "v"), ("g", "a", "v"), ("h", "z", "s")],
        )
        assert graph_property_decider.decompose(combined) == [
            GradedMatrixRing.over_field((0, 1)),
            GradedMatrixRing.over_laurent(1, (0, 1)),
        ]

    def test_requires_no_exit(self, rose):
        """Test the precondition"""
        with pytest.raises(ContractViolation):
            graph_property_decider.decompose(rose)
        with pytest.raises(ContractViolation):
            lpa_graded_dimension(rose, 0)

    @pytest.mark.parametrize("name", NO_EXIT_GRAPHS)
    def test_graded_dimensions_match(self, name):
        """Test dim L(E)_d equals the summands' dimension for d in -3..3"""
        g = _load(name)
        summands = graph_property_decider.decompose(g)
        for d in range(-3, 4):
            assert graded_dimension(summands, d) == lpa_graded_dimension(g, d)

    @pytest.mark.slow
    def test_graded_dimensions_on_every_small_graph(self):
        """Test the dimension count on every no-exit graph with at most 3 vertices and 4 edges"""
        checked = 0
        for g in _no_exit_graphs(max_vertices=3, max_edges=4):
            summands = graph_property_decider.decompose(g)
            for d in range(-3, 4):
                assert graded_dimension(summands, d) == lpa_graded_dimension(g, d), g.edges
            checked += 1
        assert checked > 100

    @hyp_settings(max_examples=60, deadline=None)
    @given(small_graphs(max_vertices=4, max_edges=5))
    def test_graded_dimensions_on_random_graphs(self, g):
        """Test the dimension count on random no-exit graphs with up to 4 vertices"""
        if not is_no_exit(g):
            return
        summands = graph_property_decider.decompose(g)
        for d in range(-2, 3):
            assert graded_dimension(summands, d) == lpa_graded_dimension(g, d)

    def test_base_choice_invariance(self, twocycle_entrance):
        """Test that another base on the cycle gives an isomorphic summand"""
        (cycle,) = enumerate_cycles(twocycle_entrance)
        at_u = cycle_summand(twocycle_entrance, cycle, "u")
        at_v = cycle_summand(twocycle_entrance, cycle, "v")
        assert at_u.shifts == (0, 1, 2)
        assert at_v.shifts == (0, 1, 1)
        for d in range(-3, 4):
            assert graded_dimension([at_u], d) == graded_dimension([at_v], d)

    @pytest.mark.parametrize("name", NO_EXIT_GRAPHS)
    def test_matrix_deciders_agree(self, name):
        """Test graph verdicts against the ring verdicts of the summands"""
        g = _load(name)
        report = graph_property_decider.analyze(g)
        summands = graph_property_decider.decompose(g)

        clean = all(is_graded_clean_ring(r).value == VerdictValue.YES for r in summands)
        assert report.verdict("Cln_gr") == (VerdictValue.YES if clean else VerdictValue.NO)

        exchange = [graded_exchange_ring(r).value for r in summands]
        if all(v == VerdictValue.YES for v in exchange):
            assert report.verdict("Exch_gr") == VerdictValue.YES
        else:
            assert report.verdict("Exch_gr") == VerdictValue.UNKNOWN
