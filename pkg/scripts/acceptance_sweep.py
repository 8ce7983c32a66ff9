"""Desk-scale acceptance sweep.

Runs the golden reports, the graded-dimension audit, the clean-decider vs
oracle agreement, the constructive exchange witnesses and the
shift-normalization invariance checks, logging a summary of each stage.
Exits nonzero if any stage reports a discrepancy.
"""
import itertools
import json
import logging
import sys
from pathlib import Path
from typing import List

from gradedlpa.cli.parser import parse_graph_file
from gradedlpa.errors import GradedLpaError
from gradedlpa.models.evidence import Outcome, SearchWindow
from gradedlpa.models.graph import Graph
from gradedlpa.models.report import VerdictValue
from gradedlpa.models.ring import GradedMatrixRing
from gradedlpa.services.deciders import graded_dimension, graph_property_decider, lpa_graded_dimension
from gradedlpa.services.gmatrix import (
    graded_exchange_ring,
    graded_exchange_witness,
    is_graded_clean_ring,
    normalize_shifts,
    verify_exchange,
)
from gradedlpa.services.graph import is_no_exit
from gradedlpa.services.oracle import BruteForceOracle

# Configuration (standalone; the library itself reads GL_ settings)
ROOT = Path(__file__).resolve().parent.parent
GRAPH_DIR = ROOT / "data" / "graphs"
GOLDEN_DIR = ROOT / "tests" / "golden"
PRIMES = (2, 3)
DEGREE_WINDOW = (-2, 2)
DIMENSION_BOUND = 3

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def small_rings() -> List[GradedMatrixRing]:
    """Matrix rings with n <= 2, base K or K[x^m, x^-m] with m <= 2, shifts in {0,1}^n"""
    rings = []
    for n in (1, 2):
        for shifts in itertools.product((0, 1), repeat=n):
            rings.append(GradedMatrixRing.over_field(shifts))
            for m in (1, 2):
                rings.append(GradedMatrixRing.over_laurent(m, shifts))
    return rings


def small_no_exit_graphs(max_vertices: int = 3, max_edges: int = 4) -> List[Graph]:
    """Every no-exit graph on v0..v(n-1) with at most max_edges edges, parallel edges as multisets"""
    graphs = []
    for n in range(1, max_vertices + 1):
        vertices = [f"v{i}" for i in range(n)]
        pairs = list(itertools.product(range(n), repeat=2))
        for k in range(max_edges + 1):
            for chosen in itertools.combinations_with_replacement(pairs, k):
                edges = [(f"e{i}", vertices[s], vertices[r]) for i, (s, r) in enumerate(chosen)]
                g = Graph.build(vertices, edges)
                if is_no_exit(g):
                    graphs.append(g)
    return graphs


def check_golden_reports() -> int:
    """Compare every sample graph's report with its stored JSON"""
    failures = 0
    for path in sorted(GRAPH_DIR.glob("*.graph")):
        report = graph_property_decider.analyze(parse_graph_file(path).graph)
        text = json.dumps(report.as_json(1), indent=2, ensure_ascii=False) + "\n"
        golden = GOLDEN_DIR / f"{path.stem}.json"
        if not golden.exists() or golden.read_text(encoding="utf-8") != text:
            logger.error(f"{path.name}: report differs from {golden.name}")
            failures += 1
    logger.info(f"Golden reports: {failures} mismatches")
    return failures


def check_graded_dimensions() -> int:
    """dim L(E)_d against the decomposition for the no-exit samples and every small no-exit graph"""
    failures = 0
    named = []
    for path in sorted(GRAPH_DIR.glob("*.graph")):
        g = parse_graph_file(path).graph
        if not is_no_exit(g):
            logger.info(f"{path.name}: has an exit, skipped")
            continue
        named.append((path.name, g))
    enumerated = small_no_exit_graphs()
    named += [(f"enumerated #{i}", g) for i, g in enumerate(enumerated)]
    for label, g in named:
        summands = graph_property_decider.decompose(g)
        for d in range(-DIMENSION_BOUND, DIMENSION_BOUND + 1):
            expected, actual = lpa_graded_dimension(g, d), graded_dimension(summands, d)
            if expected != actual:
                logger.error(f"{label}: degree {d} has dimension {expected}, summands give {actual}")
                failures += 1
    logger.info(f"Graded dimensions over {len(named)} graphs ({len(enumerated)} enumerated): {failures} mismatches")
    return failures


def check_clean_agreement(oracle: BruteForceOracle) -> int:
    """Clean decider Yes iff every windowed element has a clean decomposition"""
    failures = 0
    lo, hi = DEGREE_WINDOW
    for p in PRIMES:
        window = SearchWindow(p=p, degree_lo=lo, degree_hi=hi)
        for ring in small_rings():
            records = oracle.sweep(ring, window, "clean")
            if any(r.outcome == Outcome.INCONCLUSIVE for r in records):
                logger.error(f"{ring.label()} over F_{p}: inconclusive clean search")
                failures += 1
                continue
            searched = all(r.outcome == Outcome.FOUND for r in records)
            decided = is_graded_clean_ring(ring).value == VerdictValue.YES
            if searched != decided:
                logger.error(f"{ring.label()} over F_{p}: decider says {decided}, oracle says {searched}")
                failures += 1
    logger.info(f"Clean decider vs oracle: {failures} disagreements")
    return failures


def check_exchange_witnesses(oracle: BruteForceOracle) -> int:
    """Constructive witnesses for every windowed element of the two reference rings"""
    failures = 0
    checked = 0
    lo, hi = DEGREE_WINDOW
    targets = [
        (GradedMatrixRing.over_laurent(2, (0, 1)), 2),
        (GradedMatrixRing.over_field((0, 1, 1)), 3),
    ]
    for ring, p in targets:
        window = SearchWindow(p=p, degree_lo=lo, degree_hi=hi)
        for d in window.degrees:
            for x in oracle.enumerate_homogeneous(ring, d, window):
                checked += 1
                try:
                    ok = verify_exchange(x, graded_exchange_witness(x))
                except GradedLpaError as e:
                    logger.error(f"{ring.label()}: {x.render()} raised {e}")
                    ok = False
                failures += not ok
    logger.info(f"Exchange witnesses: {checked} elements, {failures} failures")
    return failures


def check_shift_invariance() -> int:
    """Verdicts unchanged by permutation, translation and mod-m reduction of shifts"""
    failures = 0
    for n in (1, 2, 3):
        for shifts in itertools.product(range(3), repeat=n):
            variants = [GradedMatrixRing.over_field(shifts)]
            variants += [GradedMatrixRing.over_laurent(m, shifts) for m in (1, 2, 3)]
            for ring in variants:
                verdicts = (is_graded_clean_ring(ring).value, graded_exchange_ring(ring).value)
                moved = [
                    normalize_shifts(ring),
                    ring.model_copy(update={"shifts": tuple(reversed(ring.shifts))}),
                    ring.model_copy(update={"shifts": tuple(s + 5 for s in ring.shifts)}),
                ]
                for other in moved:
                    if (is_graded_clean_ring(other).value, graded_exchange_ring(other).value) != verdicts:
                        logger.error(f"{ring.label()} and {other.label()} disagree")
                        failures += 1
    logger.info(f"Shift invariance: {failures} violations")
    return failures


def main() -> int:
    oracle = BruteForceOracle()
    failures = 0
    failures += check_golden_reports()
    failures += check_graded_dimensions()
    failures += check_clean_agreement(oracle)
    failures += check_exchange_witnesses(oracle)
    failures += check_shift_invariance()
    if failures:
        logger.error(f"Acceptance sweep failed with {failures} problems")
        return 1
    logger.info("Acceptance sweep passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
