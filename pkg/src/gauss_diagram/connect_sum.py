"""
Connect sum of Gauss diagrams on a shared graph, splitting by agent sets and agent-wise prime
factorization.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

import networkx as nx

from gauss_diagram.canonical import UnderlyingGraph, underlying_graph
from gauss_diagram.classes import GaussDiagram, IncaError, VertexRef, require_valid
from gauss_diagram.search import Outcome, SearchBudget, Verdict, equivalent, is_trivial

if TYPE_CHECKING:
    from foam_invariants.fingerprint import Fingerprint

logger = logging.getLogger(__name__)


class ConnectSumError(IncaError):
    pass


class GraphMismatchError(ConnectSumError):
    pass


class SupportOverlapError(ConnectSumError):
    def __init__(self, agents: list[VertexRef]) -> None:
        self.agents = agents
        super().__init__(f"Acting agents in both diagrams: {', '.join(str(a) for a in agents)}")


class EdgeCollisionError(ConnectSumError):
    def __init__(self, edges: list) -> None:
        self.edges = edges
        super().__init__(f"Edges acted on in both diagrams: {', '.join(str(e) for e in edges)}")


class SplitError(ConnectSumError):
    pass


def connect_sum(first: GaussDiagram, second: GaussDiagram) -> GaussDiagram:
    require_valid(first)
    require_valid(second)
    if first.components != second.components:
        raise GraphMismatchError("Connect sum needs identical components, sizes and names")
    overlap = sorted(first.support() & second.support())
    if overlap:
        raise SupportOverlapError(overlap)
    collisions = sorted({i.edge for i in first.interactions} & {i.edge for i in second.interactions})
    if collisions:
        raise EdgeCollisionError(collisions)
    return GaussDiagram(first.components, first.interactions + second.interactions, first.marks | second.marks)


def split(diagram: GaussDiagram, agents: Iterable[VertexRef]) -> tuple[GaussDiagram, GaussDiagram]:
    """(restriction to `agents`, restriction to the rest); marks follow their vertex"""
    require_valid(diagram)
    agents = frozenset(agents)
    stray = agents - diagram.support()
    if stray:
        raise SplitError(f"Not acting agents: {', '.join(str(a) for a in sorted(stray))}")
    rest = frozenset(diagram.vertices()) - agents
    return diagram.restrict(agents), diagram.restrict(rest)


# Factorization ###################


@dataclass(frozen=True)
class Factor:
    diagram: GaussDiagram
    agent: VertexRef | None
    verdict: Verdict
    fingerprint: "Fingerprint"

    @property
    def class_key(self) -> tuple:
        """Fingerprint entries that certify inequivalence of factors on a shared graph"""
        counts = tuple((name, count) for name, count, certifying in self.fingerprint.colorings if certifying)
        return (self.fingerprint.linking, counts)


@dataclass(frozen=True)
class Factorization:
    base: UnderlyingGraph
    factors: tuple[Factor, ...]
    units: tuple[Factor, ...]
    stray_marks: GaussDiagram
    exhaustive: bool

    def reconstruct(self) -> GaussDiagram:
        """Connect sum of every factor, units and stray marks included"""
        result = self.stray_marks
        for factor in self.factors + self.units:
            result = connect_sum(result, factor.diagram)
        return result

    def lines(self) -> list[str]:
        lines = [f"factors: {len(self.factors)}", f"units: {len(self.units)}"]
        for factor in self.factors:
            lines.append(f"factor: {factor.agent} {factor.verdict.outcome.value}")
        lines.append(f"exhaustive: {str(self.exhaustive).lower()}")
        return lines


def prime_factorize(
    diagram: GaussDiagram, budget: SearchBudget = SearchBudget(), panel=None, workers: int = 1
) -> Factorization:
    """Single-agent restrictions; certified-trivial ones are units and dropped"""
    from foam_invariants.fingerprint import DEFAULT_PANEL, fingerprint

    require_valid(diagram)
    panel = DEFAULT_PANEL if panel is None else panel
    factors, units = [], []
    for agent in sorted(diagram.support()):
        restriction = diagram.restrict({agent})
        verdict = is_trivial(restriction, budget, panel, workers)
        factor = Factor(restriction, agent, verdict, fingerprint(restriction, panel))
        (units if verdict.is_yes else factors).append(factor)
    stray = diagram.trivial().evolve(marks=diagram.marks - diagram.support())
    exhaustive = all(f.verdict.outcome is not Outcome.UNKNOWN for f in factors)
    logger.info("%d factors, %d units", len(factors), len(units))
    return Factorization(underlying_graph(diagram), tuple(factors), tuple(units), stray, exhaustive)


def factors_match(
    first: Factorization, second: Factorization, budget: SearchBudget = SearchBudget(), workers: int = 1
) -> Verdict:
    """Multiset equality of prime factors up to equivalence and permutation"""
    kinds = Counter(kind for kind, _ in first.base.components)
    if kinds != Counter(kind for kind, _ in second.base.components):
        raise GraphMismatchError("Factorizations over different base graphs")

    # only certified-nontrivial factors are sure to be primes; undecided ones may be units
    one = Counter(f.class_key for f in first.factors if f.verdict.is_no)
    two = Counter(f.class_key for f in second.factors if f.verdict.is_no)
    for key in sorted(set(one) | set(two), key=repr):
        if one[key] != two[key]:
            certificate = f"{one[key]} vs {two[key]} nontrivial factors with linking {key[0]}"
            return Verdict(Outcome.NO, certificate=certificate)

    if len(first.factors) != len(second.factors):
        return Verdict(Outcome.UNKNOWN)
    graph = nx.Graph()
    left = [("first", i) for i in range(len(first.factors))]
    graph.add_nodes_from(left)
    graph.add_nodes_from(("second", j) for j in range(len(second.factors)))
    states = 0
    for i, f in enumerate(first.factors):
        for j, g in enumerate(second.factors):
            if f.class_key != g.class_key:
                continue
            verdict = equivalent(f.diagram, g.diagram, budget, workers=workers)
            states += verdict.states
            if verdict.is_yes:
                graph.add_edge(("first", i), ("second", j))
    matching = nx.bipartite.maximum_matching(graph, top_nodes=left)
    if len(matching) // 2 == len(first.factors):
        return Verdict(Outcome.YES, states=states)
    return Verdict(Outcome.UNKNOWN, states=states)
