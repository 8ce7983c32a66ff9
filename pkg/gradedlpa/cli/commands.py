"""Subcommands: analyze, decompose, matrix, oracle, eval"""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

from gradedlpa.config import parse_window, settings
from gradedlpa.errors import ContractViolation, GradedLpaError
from gradedlpa.models.evidence import Outcome, SearchWindow
from gradedlpa.models.report import PROPERTY_NAMES, VerdictValue
from gradedlpa.models.ring import GradedMatrixRing
from gradedlpa.services.coeff import Field
from gradedlpa.services.deciders import graph_property_decider
from gradedlpa.services.gmatrix import graded_exchange_ring, graded_exchange_witness, is_graded_clean_ring
from gradedlpa.services.oracle import brute_force_oracle
from gradedlpa.cli.parser import parse_element, parse_graph_file

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNKNOWN = 1
EXIT_INPUT_ERROR = 2


def dump_json(payload: Any) -> str:
    """Stable JSON text: insertion key order, configured indentation"""
    return json.dumps(payload, indent=settings.json_indent, ensure_ascii=False)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


# Handlers return the exit code


def cmd_analyze(args: argparse.Namespace) -> int:
    doc = parse_graph_file(args.graph)
    report = graph_property_decider.analyze(doc.graph)
    if args.json:
        _emit(dump_json(report.as_json(settings.report_schema_version)))
    else:
        for name in PROPERTY_NAMES:
            verdict = report.properties[name]
            _emit(f"{name:<10} {verdict.value.value:<8} {verdict.citation}")
    if args.strict and report.unknowns():
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    doc = parse_graph_file(args.graph)
    summands = graph_property_decider.decompose(doc.graph)
    if args.json:
        _emit(dump_json([ring.describe() for ring in summands]))
    else:
        for ring in summands:
            _emit(ring.label())
    return EXIT_OK


def _ring_from_args(args: argparse.Namespace) -> GradedMatrixRing:
    return GradedMatrixRing.parse(args.n, args.base, args.shifts)


def _window_from_args(args: argparse.Namespace, field: Field) -> SearchWindow:
    if not field.is_finite:
        raise ContractViolation("searches enumerate elements and need a finite field fp:P")
    window = SearchWindow.from_settings(field.characteristic)
    if args.window:
        lo, hi = parse_window(args.window)
        window = window.model_copy(update={"degree_lo": lo, "degree_hi": hi})
    return window


def cmd_matrix(args: argparse.Namespace) -> int:
    ring = _ring_from_args(args)
    field = Field.parse(args.field)
    decide = is_graded_clean_ring if args.property == "clean" else graded_exchange_ring
    verdict = decide(ring)
    payload: Dict[str, Any] = {
        "ring": ring.describe(),
        "field": field.label,
        "property": args.property,
        **verdict.as_json(),
    }
    if args.witness:
        payload["witnesses"] = _witnesses(ring, field, args, verdict.value == VerdictValue.YES)
    if args.json:
        _emit(dump_json(payload))
    else:
        _emit(f"{ring.label()} over {field.label}: graded {args.property} {verdict.value.value} ({verdict.citation})")
        for item in payload.get("witnesses", []):
            parts = ", ".join(f"{k}={v}" for k, v in item.items() if k not in ("x", "degree"))
            _emit(f"  x={item['x']} (degree {item['degree']}): {parts}")
    if args.strict and verdict.value == VerdictValue.UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK


def _witnesses(ring: GradedMatrixRing, field: Field, args: argparse.Namespace, decided: bool) -> List[Dict]:
    """One witness per homogeneous element of the window"""
    if not decided:
        return []
    window = _window_from_args(args, field)
    out = []
    for d in window.degrees:
        for x in brute_force_oracle.enumerate_homogeneous(ring, d, window):
            item: Dict[str, Any] = {"x": x.render(), "degree": d}
            if args.property == "exchange":
                witness = graded_exchange_witness(x)
                item.update({"e": witness.e.render(), "r": witness.r.render(), "s": witness.s.render()})
            else:
                result = brute_force_oracle.brute_graded_clean(ring, x, window)
                if result.witness is not None:
                    item.update({k: v.render() for k, v in result.witness.items()})
            out.append(item)
    return out


def cmd_oracle(args: argparse.Namespace) -> int:
    ring = _ring_from_args(args)
    field = Field.parse(args.field)
    window = _window_from_args(args, field)
    records = brute_force_oracle.sweep(ring, window, args.kind)
    if args.json:
        _emit(dump_json([record.as_json() for record in records]))
    else:
        for record in records:
            _emit(f"{record.kind} degree {record.degree} x={record.x}: {record.outcome.value}")
    if args.strict and any(r.outcome == Outcome.INCONCLUSIVE for r in records):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    doc = parse_graph_file(args.graph)
    element = parse_element(args.expr, doc.graph, Field.parse(args.field))
    components = {str(d): element.component(d).render() for d in element.degrees()}
    if args.json:
        _emit(dump_json({
            "normal_form": element.render(),
            "homogeneous": element.is_homogeneous(),
            "components": components,
        }))
    else:
        _emit(element.render())
        for d, text in components.items():
            _emit(f"  degree {d}: {text}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON on stdout")
    common.add_argument("--strict", action="store_true", help="Exit 1 when the answer is Unknown")

    ring_options = argparse.ArgumentParser(add_help=False)
    ring_options.add_argument("--n", type=int, required=True, help="Matrix size")
    ring_options.add_argument("--base", required=True, help="'k' or 'laurent:M'")
    ring_options.add_argument("--shifts", required=True, help="Shift vector 'a,b,...'")
    ring_options.add_argument("--field", default="q", help="'q' or 'fp:P'")
    ring_options.add_argument("--window", default=None, help="Degree window 'lo,hi' (default GL_ORACLE_WINDOW)")

    parser = argparse.ArgumentParser(
        prog="gradedlpa",
        description="Cancellation properties of graded matrix rings and Leavitt path algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", parents=[common], help="Property report for a graph")
    analyze.add_argument("graph", help="Path to a .graph file")
    analyze.set_defaults(handler=cmd_analyze)

    decompose = sub.add_parser("decompose", parents=[common], help="Graded matrix summands of a no-exit graph")
    decompose.add_argument("graph", help="Path to a .graph file")
    decompose.set_defaults(handler=cmd_decompose)

    matrix = sub.add_parser("matrix", parents=[common, ring_options], help="Decide a graded matrix ring")
    matrix.add_argument("action", choices=["check"])
    matrix.add_argument("property", choices=["clean", "exchange"])
    matrix.add_argument("--witness", action="store_true", help="Witness for every homogeneous element of the window")
    matrix.set_defaults(handler=cmd_matrix)

    oracle = sub.add_parser("oracle", parents=[common, ring_options], help="Brute-force evidence records")
    oracle.add_argument("--kind", choices=["clean", "exchange"], default="exchange")
    oracle.set_defaults(handler=cmd_oracle)

    evaluate = sub.add_parser("eval", parents=[common], help="Normal form of an element")
    evaluate.add_argument("graph", help="Path to a .graph file")
    evaluate.add_argument("-e", "--expr", required=True, help='Expression such as "2 e f* - v"')
    evaluate.add_argument("--field", default="q", help="'q' or 'fp:P'")
    evaluate.set_defaults(handler=cmd_eval)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (GradedLpaError, ValueError, OSError) as exc:
        logger.error(f"{args.command} failed: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR
