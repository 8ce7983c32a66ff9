"""Tests for the graph DSL, element parser and command-line interface"""
import json

import pytest

from gradedlpa.cli.commands import EXIT_INPUT_ERROR, EXIT_OK, EXIT_UNKNOWN, run
from gradedlpa.cli.parser import parse_element, parse_graph, parse_graph_file, render_graph
from gradedlpa.errors import DSLSyntaxError
from gradedlpa.main import main
from gradedlpa.models.graph import Graph
from gradedlpa.services.coeff import Field
from gradedlpa.services.lpa import LeavittPathAlgebra

from tests.conftest import DATA_DIR


class TestGraphParser:
    """Test .graph documents"""

    def test_parse(self):
        """Test a loop with declaration sites"""
        doc = parse_graph("vertex v;\nedge e: v -> v;\n", source="loop.graph")
        assert doc.graph == Graph.build(["v"], [("e", "v", "v")])
        assert doc.locations["e"].line == 2
        assert doc.locations["e"].column == 6
        assert str(doc.locations["v"]) == "loop.graph:1:8"

    def test_comments_and_forward_references(self):
        """Test comments and edges declared before their vertices"""
        doc = parse_graph("# twocycle\nedge e: v -> w;\nedge f: w -> v;\nvertex v;\nvertex w;\n")
        assert doc.graph.vertices == ("v", "w")
        assert [e.id for e in doc.graph.edges] == ["e", "f"]

    def test_duplicate_id(self):
        """Test a repeated declaration points at both sites"""
        with pytest.raises(DSLSyntaxError) as info:
            parse_graph("vertex v;\nvertex v;\n")
        assert info.value.message == "duplicate id v"
        assert (info.value.location.line, info.value.location.column) == (2, 8)
        assert "1:8" in info.value.hint

    def test_unknown_vertex(self):
        """Test an edge into an undeclared vertex"""
        with pytest.raises(DSLSyntaxError) as info:
            parse_graph("vertex v;\nedge e: v -> w;\n")
        assert info.value.message == "unknown vertex w"
        assert (info.value.location.line, info.value.location.column) == (2, 14)

    def test_bad_character(self):
        """Test a vertex id starting with a digit"""
        with pytest.raises(DSLSyntaxError) as info:
            parse_graph("vertex 1v;\n")
        assert (info.value.location.line, info.value.location.column) == (1, 8)

    def test_missing_semicolon(self):
        """Test a truncated statement"""
        with pytest.raises(DSLSyntaxError) as info:
            parse_graph("vertex v\n")
        assert info.value.location is not None

    def test_render_round_trip(self, twocycle_entrance):
        """Test rendered graphs parse back"""
        assert parse_graph(render_graph(twocycle_entrance)).graph == twocycle_entrance

    def test_sample_files(self, rose):
        """Test the bundled sample graphs"""
        assert parse_graph_file(DATA_DIR / "rose.graph").graph == rose


class TestElementParser:
    """Test element expressions"""

    def test_ghost_times_edge(self, rose):
        """Test e* e reduces to r(e)"""
        assert parse_element("e* e", rose).render() == "v"

    def test_mismatched_ranges_vanish(self, twocycle):
        """Test 2 e f* = 0 when r(e) != r(f)"""
        assert parse_element("2 e f*", twocycle).is_zero()

    def test_special_edge_rewrite(self, rose):
        """Test f f* in normal form"""
        assert parse_element("f f*", rose).render() == "v - e e*"

    def test_coefficients(self, rose):
        """Test rational coefficients and signs"""
        algebra = LeavittPathAlgebra(rose, Field(0))
        assert parse_element("1/2 v + 1/2 v", rose) == algebra.vertex("v")
        assert parse_element("- e", rose).render() == "-e"
        assert parse_element("3", rose) == algebra.one().scale(3)
        assert parse_element("3", rose, Field(3)).is_zero()

    @pytest.mark.parametrize("text, field", [
        ("1/0 v", Field(0)),
        ("1/3 v", Field(3)),
        ("x", Field(0)),
        ("e -", Field(0)),
    ])
    def test_errors(self, rose, text, field):
        """Test bad expressions"""
        with pytest.raises(DSLSyntaxError):
            parse_element(text, rose, field)


class TestCommands:
    """Test subcommands and exit codes"""

    def test_analyze_json(self, capsys):
        """Test the JSON report"""
        assert run(["analyze", str(DATA_DIR / "loop.graph"), "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["properties"]["Cln_gr"]["verdict"] == "Yes"
        assert payload["decomposition"] == [{"base": "laurent", "n": 1, "m": 1, "shifts": [0]}]

    def test_analyze_strict(self, capsys):
        """Test --strict with an undecided property"""
        assert run(["analyze", str(DATA_DIR / "rose.graph"), "--strict"]) == EXIT_UNKNOWN
        assert run(["analyze", str(DATA_DIR / "loop.graph"), "--strict"]) == EXIT_OK
        assert "Cln_gr" in capsys.readouterr().out

    def test_missing_file(self, capsys):
        """Test an unreadable graph file"""
        assert run(["analyze", "missing.graph"]) == EXIT_INPUT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_decompose(self, capsys):
        """Test summands and the no-exit precondition"""
        assert run(["decompose", str(DATA_DIR / "twocycle.graph"), "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == [{"base": "laurent", "n": 2, "m": 2, "shifts": [0, 1]}]
        assert run(["decompose", str(DATA_DIR / "rose.graph")]) == EXIT_INPUT_ERROR

    def test_matrix_check(self, capsys):
        """Test ring verdicts and --strict"""
        args = ["matrix", "check", "exchange", "--n", "3", "--base", "laurent:2", "--shifts", "0,1,1"]
        assert run(args + ["--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["verdict"] == "Unknown"
        assert run(args + ["--strict"]) == EXIT_UNKNOWN

        assert run(["matrix", "check", "clean", "--n", "2", "--base", "k", "--shifts", "0,1", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["verdict"] == "No"

    def test_matrix_bad_flags(self):
        """Test inconsistent ring flags"""
        assert run(["matrix", "check", "clean", "--n", "2", "--base", "k", "--shifts", "0,1,1"]) == EXIT_INPUT_ERROR
        assert run(["matrix", "check", "clean", "--n", "1", "--base", "z", "--shifts", "0"]) == EXIT_INPUT_ERROR

    def test_matrix_witnesses(self, capsys):
        """Test witnesses over F_2 and the finite-field requirement"""
        args = ["matrix", "check", "exchange", "--n", "2", "--base", "k", "--shifts", "0,1", "--witness", "--window", "0,0"]
        assert run(args + ["--field", "fp:2", "--json"]) == EXIT_OK
        witnesses = json.loads(capsys.readouterr().out)["witnesses"]
        assert len(witnesses) == 4
        assert set(witnesses[0]) == {"x", "degree", "e", "r", "s"}
        assert run(args) == EXIT_INPUT_ERROR

    def test_oracle(self, capsys):
        """Test the evidence sweep"""
        args = ["oracle", "--n", "2", "--base", "laurent:2", "--shifts", "0,1", "--field", "fp:2", "--window", "-1,1", "--json"]
        assert run(args) == EXIT_OK
        records = json.loads(capsys.readouterr().out)
        assert len(records) == 12
        assert {r["outcome"] for r in records} == {"found"}

    def test_eval(self, capsys):
        """Test normal forms and homogeneous components"""
        assert run(["eval", str(DATA_DIR / "rose.graph"), "-e", "f f*", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload == {"normal_form": "v - e e*", "homogeneous": True, "components": {"0": "v - e e*"}}
        assert run(["eval", str(DATA_DIR / "rose.graph"), "-e", "e +"]) == EXIT_INPUT_ERROR

    def test_usage_errors(self):
        """Test argparse rejects unknown subcommands"""
        with pytest.raises(SystemExit):
            run(["frobnicate"])

    def test_main(self, capsys):
        """Test the entry point"""
        assert main(["analyze", str(DATA_DIR / "two_vertices.graph")]) == EXIT_OK
        assert "Reg" in capsys.readouterr().out
