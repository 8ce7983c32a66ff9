"""Graph-property deciders for Leavitt path algebras and the no-exit structural decomposition"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from gradedlpa.errors import ContractViolation, InvariantViolation
from gradedlpa.models.graph import Cycle, Graph
from gradedlpa.models.report import PROPERTY_NAMES, PropertyReport, Verdict, VerdictValue
from gradedlpa.models.ring import GradedMatrixRing
from gradedlpa.services.coeff import Field
from gradedlpa.services.graph import (
    GraphShape,
    check_edl,
    cycle_entry_paths,
    enumerate_cycles,
    graph_shape,
    has_condition_K,
    is_acyclic,
    is_acyclic_or_single_cycle_union,
    is_no_exit,
    sink_paths,
    sinks_isolated,
)
from gradedlpa.services.lpa import LeavittPathAlgebra

logger = logging.getLogger(__name__)

# Citation keys
REGULAR_ACYCLIC = "regular-lpa: acyclic graph"
UNIT_REGULAR_ACYCLIC = "unit-regular-lpa: acyclic graph"
STABLE_RANGE_ACYCLIC = "stable-range-one-lpa: acyclic graph"
DIRECTLY_FINITE_NO_EXIT = "directly-finite-lpa: no-exit graph"
EXCHANGE_CONDITION_K = "exchange-lpa: Condition (K)"
CLEAN_ACYCLIC = "clean-lpa: acyclic graph is regular with stable range one"
CLEAN_NOT_EXCHANGE = "clean-lpa: clean implies exchange, which needs Condition (K)"
CLEAN_OPEN = "clean-lpa: open between acyclic and Condition (K)"
GRADED_REGULAR_ALWAYS = "graded-regular-lpa: every Leavitt path algebra"
GRADED_UR_CHARACTERIZATION = "graded-unit-regular-lpa: finite, no-exit, isolated sinks, EDL"
GRADED_SR_CHARACTERIZATION = "graded-stable-range-one-lpa: finite, no-exit, isolated sinks, EDL"
GRADED_DF_NO_EXIT = "graded-directly-finite-lpa: no-exit graph"
GRADED_CLEAN_SHAPE = "graded-clean-lpa: disjoint vertices or a single loop"
GRADED_EXCHANGE_NEEDS_NO_EXIT = "graded-exchange-lpa: exits rule it out"
GRADED_EXCHANGE_SUFFICIENT = "graded-exchange-lpa: acyclic and single-cycle components"
GRADED_EXCHANGE_OPEN = "graded-exchange-lpa: open for no-exit graphs outside acyclic and single-cycle components"
ZERO_COMPONENT_MATRICIAL = "zero-component-lpa: matricial over K"

# (premises, conclusion): all premises Yes force the conclusion Yes
IMPLICATIONS: List[Tuple[Tuple[str, ...], str]] = [
    (("UR",), "Reg"),
    (("UR",), "sr=1"),
    (("UR",), "Cln"),
    (("sr=1",), "DF"),
    (("Reg", "sr=1"), "UR"),
    (("Reg", "sr=1"), "Cln"),
    (("Cln",), "Exch"),
    (("Reg",), "Exch"),
    (("Cln_gr",), "UR_gr"),
    (("Cln_gr",), "Exch_gr"),
    (("UR_gr",), "sr=1_gr"),
    (("sr=1_gr",), "UR_gr"),
    (("sr=1_gr",), "DF_gr"),
    (("DF_gr",), "Reg_gr"),
    (("Exch_gr",), "DF_gr"),
    (("Exch_gr",), "Reg_gr"),
    (("DF",), "DF_gr"),
] + [((f"{p}_gr",), f"{p}_eps") for p in ("Reg", "UR", "sr=1", "DF", "Cln", "Exch")]


def audit_implications(report: PropertyReport) -> None:
    """Raise InvariantViolation if a forced conclusion is not Yes"""
    for premises, conclusion in IMPLICATIONS:
        if all(report.verdict(p) == VerdictValue.YES for p in premises):
            if report.verdict(conclusion) != VerdictValue.YES:
                raise InvariantViolation(
                    f"{' + '.join(premises)} holds but {conclusion} is {report.verdict(conclusion).value}"
                )


class GraphPropertyDecider:
    """Pair ring properties of L_K(E) with graph properties of E"""

    def __init__(self):
        logger.info("Graph property decider ready")

    def analyze(self, g: Graph) -> PropertyReport:
        """
        Decide the eighteen properties for one graph

        Args:
            g: A finite graph

        Returns:
            PropertyReport with one cited verdict per property; for no-exit
            graphs the structural decomposition is attached
        """
        acyclic = is_acyclic(g)
        no_exit = is_no_exit(g)
        condition_k = has_condition_K(g)

        verdicts: Dict[str, Verdict] = {
            "Reg": Verdict.of(acyclic, REGULAR_ACYCLIC),
            "UR": Verdict.of(acyclic, UNIT_REGULAR_ACYCLIC),
            "sr=1": Verdict.of(acyclic, STABLE_RANGE_ACYCLIC),
            "DF": Verdict.of(no_exit, DIRECTLY_FINITE_NO_EXIT),
            "Exch": Verdict.of(condition_k, EXCHANGE_CONDITION_K),
        }
        if acyclic:
            verdicts["Cln"] = Verdict.yes(CLEAN_ACYCLIC)
        elif not condition_k:
            verdicts["Cln"] = Verdict.no(CLEAN_NOT_EXCHANGE)
        else:
            verdicts["Cln"] = Verdict.unknown(CLEAN_OPEN)

        # every stored graph is finite, so L_K(E) is unital and the unital-case rules apply
        graded_ur = no_exit and sinks_isolated(g) and check_edl(g)
        verdicts.update({
            "Reg_gr": Verdict.yes(GRADED_REGULAR_ALWAYS),
            "UR_gr": Verdict.of(graded_ur, GRADED_UR_CHARACTERIZATION),
            "sr=1_gr": Verdict.of(graded_ur, GRADED_SR_CHARACTERIZATION),
            "DF_gr": Verdict.of(no_exit, GRADED_DF_NO_EXIT),
            "Cln_gr": Verdict.of(
                graph_shape(g) in (GraphShape.DISJOINT_VERTICES, GraphShape.SINGLE_LOOP),
                GRADED_CLEAN_SHAPE,
            ),
        })
        if not no_exit:
            verdicts["Exch_gr"] = Verdict.no(GRADED_EXCHANGE_NEEDS_NO_EXIT)
        elif is_acyclic_or_single_cycle_union(g):
            verdicts["Exch_gr"] = Verdict.yes(GRADED_EXCHANGE_SUFFICIENT)
        else:
            verdicts["Exch_gr"] = Verdict.unknown(GRADED_EXCHANGE_OPEN)

        for name in ("Reg", "UR", "sr=1", "DF", "Cln", "Exch"):
            verdicts[f"{name}_eps"] = Verdict.yes(ZERO_COMPONENT_MATRICIAL)

        decomposition = None
        if no_exit:
            decomposition = [ring.describe() for ring in self.decompose(g)]

        report = PropertyReport(
            vertices=len(g.vertices),
            edges=len(g.edges),
            unital=True,
            properties={name: verdicts[name] for name in PROPERTY_NAMES},
            decomposition=decomposition,
        )
        audit_implications(report)
        unknowns = report.unknowns()
        if unknowns:
            logger.warning(f"Undecided properties: {', '.join(unknowns)}")
        logger.info(f"Analyzed graph with {len(g.vertices)} vertices and {len(g.edges)} edges")
        return report

    def decompose(self, g: Graph) -> List[GradedMatrixRing]:
        """One summand per sink, then one per cycle in canonical order"""
        if not is_no_exit(g):
            raise ContractViolation("structural decomposition requires finite no-exit graph")
        summands = []
        for v in g.vertices:
            if g.is_sink(v):
                lengths = sorted(len(p) for p in sink_paths(g, v))
                summands.append(GradedMatrixRing.over_field(lengths))
        for c in enumerate_cycles(g):
            summands.append(cycle_summand(g, c))
        logger.info(f"Decomposed graph into {len(summands)} graded matrix summands")
        return summands


def cycle_summand(g: Graph, cycle: Cycle, base: Optional[str] = None) -> GradedMatrixRing:
    """M_n(K[x^m, x^-m])(lengths) over the paths that end at base and avoid the cycle"""
    base = base or cycle.base(g)
    lengths = sorted(len(p) for p in cycle_entry_paths(g, cycle, base))
    summand = GradedMatrixRing.over_laurent(cycle.length, lengths)
    present = {s % cycle.length for s in lengths}
    if present != set(range(cycle.length)):
        raise InvariantViolation(f"cycle {list(cycle.edges)} misses residues in {lengths}")
    return summand


def graded_dimension(summands: Sequence[GradedMatrixRing], d: int) -> int:
    """K-dimension of the degree-d component of a direct sum of graded matrix rings"""
    total = 0
    for ring in summands:
        for gi in ring.shifts:
            for gj in ring.shifts:
                if ring.admits(d - gi + gj):
                    total += 1
    return total


def lpa_graded_dimension(g: Graph, d: int) -> int:
    """Number of normal-form basis monomials of degree d in L_K(E), E finite no-exit"""
    if not is_no_exit(g):
        raise ContractViolation("graded dimension count requires finite no-exit graph")
    algebra = LeavittPathAlgebra(g, Field(0))
    # in a no-exit graph a normal-form monomial has |p|, |q| <= |d| + |V|
    return len(algebra.basis_monomials(d, abs(d) + len(g.vertices)))


def analyze_graph(g: Graph) -> PropertyReport:
    return graph_property_decider.analyze(g)


def structural_decomposition(g: Graph) -> List[GradedMatrixRing]:
    return graph_property_decider.decompose(g)


# Global instance
graph_property_decider = GraphPropertyDecider()
