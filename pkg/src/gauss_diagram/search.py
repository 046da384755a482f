"""
Bounded search over the move graph: simplification, equivalence, triviality and trivial agents.

States are canonical diagrams keyed by their canonical code. Frontiers are expanded level by
level in code order; with several workers the expansion of a level is mapped over a process pool
and merged in the same order, so verdicts do not depend on the worker count.

Witness moves are located in the canonical diagram of the state they are applied to; `replay`
re-applies them starting from the canonical form of the input.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Sequence

from gauss_diagram.canonical import CanonicalCode, canonical_form
from gauss_diagram.classes import EdgeRef, GaussDiagram, VertexRef, require_valid
from gauss_diagram.moves import (
    FALSE_STABILIZATION,
    REIDEMEISTER,
    STABILIZATION,
    MoveInstance,
    MoveKind,
    apply_move,
    apply_move_tracked,
    enumerate_moves,
    inverse_move,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 4
    max_states: int = 20_000
    stable: bool = False
    use_false: bool = False
    include_adds: bool = False

    def __post_init__(self) -> None:
        if self.max_depth < 0:
            raise ValueError(f"max_depth must be nonnegative, got {self.max_depth}")
        if self.max_states < 1:
            raise ValueError(f"max_states must be positive, got {self.max_states}")

    @property
    def kinds(self) -> frozenset[MoveKind]:
        kinds = set(REIDEMEISTER)
        if self.stable or self.use_false:
            kinds |= STABILIZATION
        if self.use_false:
            kinds |= FALSE_STABILIZATION
        return frozenset(kinds)

    @property
    def key(self) -> str:
        return (
            f"depth={self.max_depth};states={self.max_states};stable={int(self.stable)};"
            f"false={int(self.use_false)};adds={int(self.include_adds)}"
        )


class Outcome(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: tuple[MoveInstance, ...] = ()
    certificate: str | None = None
    states: int = 0

    @property
    def is_yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome is Outcome.NO

    def lines(self) -> list[str]:
        lines = [f"verdict: {self.outcome.value}"]
        if self.outcome is Outcome.YES:
            lines.append(f"witness_length: {len(self.witness)}")
            lines += [f"move: {m}" for m in self.witness]
        if self.certificate:
            lines.append(f"certificate: {self.certificate}")
        lines.append(f"states: {self.states}")
        return lines


# Expansion ###################


@dataclass(frozen=True)
class _Step:
    move: MoveInstance  # located in the parent's canonical diagram
    inverse: MoveInstance  # located in the child's canonical diagram
    code: CanonicalCode
    diagram: GaussDiagram


def _transport(move: MoveInstance, relabel: dict[VertexRef, VertexRef]) -> MoveInstance:
    """Rewrites the site of `move` through a canonical relabelling"""

    def edge(e: EdgeRef) -> EdgeRef:
        tail = relabel[VertexRef(e.component, e.tail)]
        return EdgeRef(tail.component, tail.position)

    return replace(
        move,
        edge=edge(move.edge) if move.edge is not None else None,
        vertex=relabel[move.vertex] if move.vertex is not None else None,
        agent=relabel[move.agent] if move.agent is not None else None,
        moved=frozenset(edge(e) for e in move.moved),
    )


def _expand(task: tuple[GaussDiagram, frozenset[MoveKind], bool]) -> list[_Step]:
    diagram, kinds, include_adds = task
    steps = []
    for move in enumerate_moves(diagram, kinds, include_adds):
        inverse = inverse_move(diagram, move)
        form = canonical_form(apply_move(diagram, move))
        steps.append(_Step(move, _transport(inverse, form.relabel), form.code, form.diagram))
    return steps


def _tracked_agent(diagram: GaussDiagram, move: MoveInstance, tracked: VertexRef, vertex_map: dict) -> VertexRef:
    # an R3 move slides the agent disk from b to b' (and back)
    if move.kind is MoveKind.R3_SLIDE and tracked == diagram.tail_of(move.edge):
        return vertex_map[diagram.head_of(move.edge)]
    if move.kind is MoveKind.R3_UNSLIDE and tracked == diagram.head_of(move.edge):
        return vertex_map[diagram.tail_of(move.edge)]
    return vertex_map[tracked]


def _expand_tracked(task: tuple[GaussDiagram, VertexRef, frozenset[MoveKind], bool]) -> list[tuple]:
    diagram, tracked, kinds, include_adds = task
    children = []
    for move in enumerate_moves(diagram, kinds, include_adds):
        rewired = apply_move_tracked(diagram, move)
        target = _tracked_agent(diagram, move, tracked, rewired.vertex_map)
        form = canonical_form(rewired.diagram, frozenset({target}))
        children.append((form.code, form.diagram, form.relabel[target]))
    return children


class _Expander:
    """Maps an expansion function over a frontier, optionally on a process pool"""

    def __init__(self, workers: int = 1) -> None:
        self.workers = max(1, workers)
        self.pool: ProcessPoolExecutor | None = None

    def __enter__(self) -> "_Expander":
        if self.workers > 1:
            self.pool = ProcessPoolExecutor(max_workers=self.workers)
        return self

    def __exit__(self, *exc) -> None:
        if self.pool is not None:
            self.pool.shutdown()

    def map(self, function: Callable, tasks: list) -> list:
        if self.pool is None or len(tasks) < 2:
            return [function(t) for t in tasks]
        chunksize = max(1, len(tasks) // (4 * self.workers))
        return list(self.pool.map(function, tasks, chunksize=chunksize))


class _Tree:
    def __init__(self, code: CanonicalCode, diagram: GaussDiagram) -> None:
        self.parents: dict[CanonicalCode, tuple[CanonicalCode, _Step] | None] = {code: None}
        self.frontier: list[tuple[CanonicalCode, GaussDiagram]] = [(code, diagram)]
        self.depth = 0

    def grow(self, expander: _Expander, budget: SearchBudget, room: int) -> tuple[list[CanonicalCode], bool]:
        """Expands one level; returns the new codes and whether the state budget held"""
        tasks = [(diagram, budget.kinds, budget.include_adds) for _, diagram in self.frontier]
        results = expander.map(_expand, tasks)
        added = []
        within = True
        for (code, _), steps in zip(self.frontier, results):
            for step in steps:
                if step.code in self.parents:
                    continue
                if len(added) >= room:
                    within = False
                    break
                self.parents[step.code] = (code, step)
                added.append((step.code, step.diagram))
            if not within:
                break
        self.frontier = sorted(added, key=lambda item: item[0])
        if added:
            self.depth += 1
        logger.debug("Level %d: %d new states", self.depth, len(added))
        return [code for code, _ in added], within

    def steps_to(self, code: CanonicalCode) -> list[_Step]:
        steps = []
        link = self.parents[code]
        while link is not None:
            parent, step = link
            steps.append(step)
            link = self.parents[parent]
        return steps[::-1]


def replay(diagram: GaussDiagram, witness: Sequence[MoveInstance]) -> GaussDiagram:
    """Applies a witness from the canonical form of `diagram`; returns the final canonical diagram"""
    current = canonical_form(diagram).diagram
    for move in witness:
        current = canonical_form(apply_move(current, move)).diagram
    return current


# Certificates ###################


def _fingerprints(first: GaussDiagram, second: GaussDiagram, panel) -> tuple:
    # imported here: foam_invariants depends on this package
    from foam_invariants.fingerprint import DEFAULT_PANEL, fingerprint

    panel = DEFAULT_PANEL if panel is None else panel
    return fingerprint(first, panel), fingerprint(second, panel)


def _nontriviality_certificate(diagram: GaussDiagram, budget: SearchBudget, panel) -> str | None:
    from foam_invariants.colorings import count_colorings
    from foam_invariants.fingerprint import DEFAULT_PANEL
    from foam_invariants.linking import LinkingVariant, linking_graph

    if budget.use_false:
        return None
    reduced = linking_graph(diagram, LinkingVariant.REDUCED_UNFRAMED)
    if not reduced.is_zero():
        agents = ", ".join(str(v) for v in reduced.nonzero_agents())
        return f"reduced unframed linking vector nonzero at {agents}"
    for quandle in DEFAULT_PANEL if panel is None else panel:
        if not quandle.single_involutory:
            continue
        expected = quandle.size ** len(diagram.components)
        count = count_colorings(diagram, quandle)
        if count != expected:
            return f"colourings over {quandle.name}: {count} != {expected}"
    return None


# Procedures ###################


def simplify(diagram: GaussDiagram, budget: SearchBudget = SearchBudget(), max_steps: int | None = None) -> GaussDiagram:
    """
    Greedy walk that never increases the interaction count. Each step moves to the successor
    minimizing (interactions, vertices, canonical code) among unvisited states. The walk stops
    after budget.max_depth consecutive steps without improvement, or after max_steps steps;
    the best state seen is returned.
    """
    require_valid(diagram)
    form = canonical_form(diagram)
    current, code = form.diagram, form.code
    best = (len(current.interactions), current.n_vertices, code, current)
    visited = {code}
    limit = budget.max_states if max_steps is None else max_steps
    stalled = 0
    for step in range(limit):
        candidates = []
        for s in _expand((current, budget.kinds, False)):
            if s.code in visited or len(s.diagram.interactions) > len(current.interactions):
                continue
            candidates.append((len(s.diagram.interactions), s.diagram.n_vertices, s.code, s.diagram))
        if not candidates:
            logger.debug("Simplification stopped after %d steps", step)
            break
        chosen = min(candidates, key=lambda c: c[:3])
        _, _, code, current = chosen
        visited.add(code)
        if chosen[:2] < best[:2]:
            best, stalled = chosen, 0
        else:
            stalled += 1
            if stalled > budget.max_depth:
                logger.debug("No improvement in %d steps, stopping", stalled)
                break
    return best[3]


def equivalent(
    first: GaussDiagram, second: GaussDiagram, budget: SearchBudget = SearchBudget(), panel=None, workers: int = 1
) -> Verdict:
    """Bidirectional breadth-first search for a move path; NO only with a differing invariant"""
    require_valid(first)
    require_valid(second)
    one, two = _fingerprints(first, second, panel)
    certificate = one.certificate(two, budget.stable, budget.use_false)
    if certificate:
        logger.info("Not equivalent: %s", certificate)
        return Verdict(Outcome.NO, certificate=certificate)

    start, goal = canonical_form(first), canonical_form(second)
    if start.code == goal.code:
        return Verdict(Outcome.YES, states=1)
    forward, backward = _Tree(start.code, start.diagram), _Tree(goal.code, goal.diagram)

    with _Expander(workers) as expander:
        while forward.depth + backward.depth < budget.max_depth:
            live = [t for t in (forward, backward) if t.frontier]
            if not live:
                break
            tree = min(live, key=lambda t: len(t.frontier))
            other = backward if tree is forward else forward
            states = len(forward.parents) + len(backward.parents)
            added, within = tree.grow(expander, budget, budget.max_states - states)
            meets = sorted(code for code in added if code in other.parents)
            if meets:
                meet = meets[0]
                witness = [s.move for s in forward.steps_to(meet)]
                witness += [s.inverse for s in reversed(backward.steps_to(meet))]
                states = len(forward.parents) + len(backward.parents)
                logger.info("Equivalent with a witness of length %d", len(witness))
                return Verdict(Outcome.YES, tuple(witness), states=states)
            if not within:
                logger.warning("State budget of %d exhausted", budget.max_states)
                break
    return Verdict(Outcome.UNKNOWN, states=len(forward.parents) + len(backward.parents))


def is_trivial(diagram: GaussDiagram, budget: SearchBudget = SearchBudget(), panel=None, workers: int = 1) -> Verdict:
    """Searches for a move path emptying the interaction function"""
    require_valid(diagram)
    if not diagram.interactions:
        return Verdict(Outcome.YES, states=1)
    certificate = _nontriviality_certificate(diagram, budget, panel)
    if certificate:
        return Verdict(Outcome.NO, certificate=certificate)

    start = canonical_form(diagram)
    tree = _Tree(start.code, start.diagram)
    with _Expander(workers) as expander:
        while tree.depth < budget.max_depth and tree.frontier:
            added, within = tree.grow(expander, budget, budget.max_states - len(tree.parents))
            emptied = sorted(code for code, d in tree.frontier if not d.interactions)
            if emptied:
                witness = tuple(s.move for s in tree.steps_to(emptied[0]))
                return Verdict(Outcome.YES, witness, states=len(tree.parents))
            if not within:
                logger.warning("State budget of %d exhausted", budget.max_states)
                break
    return Verdict(Outcome.UNKNOWN, states=len(tree.parents))


def _agent_is_removable(diagram: GaussDiagram, agent: VertexRef, budget: SearchBudget, expander: _Expander) -> bool:
    form = canonical_form(diagram, frozenset({agent}))
    frontier = [(form.code, form.diagram, form.relabel[agent])]
    seen = {form.code}
    for _ in range(budget.max_depth):
        tasks = [(d, tracked, budget.kinds, budget.include_adds) for _, d, tracked in frontier]
        nxt = []
        for children in expander.map(_expand_tracked, tasks):
            for code, child, tracked in children:
                if code in seen:
                    continue
                if not child.is_acting(tracked):
                    return True
                if len(seen) >= budget.max_states:
                    return False
                seen.add(code)
                nxt.append((code, child, tracked))
        frontier = sorted(nxt, key=lambda item: item[0])
        if not frontier:
            break
    return False


@dataclass(frozen=True)
class TrivialAgents:
    certified: frozenset[VertexRef]
    nontrivial_lower_bound: int
    undecided: frozenset[VertexRef]

    @property
    def exhaustive(self) -> bool:
        return not self.undecided


def trivial_agents(diagram: GaussDiagram, budget: SearchBudget = SearchBudget(), workers: int = 1) -> TrivialAgents:
    """
    Agents certified removable within the budget, and a lower bound on the number of nontrivial
    agents from nonzero unframed linking vectors.
    """
    from foam_invariants.linking import linking_vectors

    require_valid(diagram)
    vectors = linking_vectors(diagram, framed=False)
    nontrivial = set() if budget.use_false else {a for a in diagram.support() if any(vectors[a])}
    certified, undecided = set(), set()
    with _Expander(workers) as expander:
        for agent in sorted(diagram.agents()):
            if not diagram.is_acting(agent):
                certified.add(agent)
            elif agent in nontrivial:
                continue
            elif _agent_is_removable(diagram, agent, budget, expander):
                certified.add(agent)
            else:
                undecided.add(agent)
    logger.info("%d agents certified trivial, %d nontrivial", len(certified), len(nontrivial))
    return TrivialAgents(frozenset(certified), len(nontrivial), frozenset(undecided))


@dataclass(frozen=True)
class ReducedGraph:
    """The underlying graph with certified-trivial agents dropped and every non-agent vertex contracted"""

    components: tuple[tuple[str, int, int], ...]  # (kind, reduced size, agents), sorted
    agents: frozenset[VertexRef]
    certified: frozenset[VertexRef]
    exhaustive: bool

    @property
    def key(self) -> tuple:
        return self.components

    def lines(self) -> list[str]:
        lines = [f"component: {kind} {size} agents={agents}" for kind, size, agents in self.components]
        lines.append(f"exhaustive: {str(self.exhaustive).lower()}")
        return lines


def reduced_graph(diagram: GaussDiagram, budget: SearchBudget = SearchBudget(), workers: int = 1) -> ReducedGraph:
    report = trivial_agents(diagram, budget, workers)
    remaining = diagram.agents() - report.certified
    components = []
    for c in diagram.components:
        count = sum(1 for a in remaining if a.component == c.name)
        components.append((c.kind.keyword, max(count, 1), count))
    return ReducedGraph(tuple(sorted(components)), frozenset(remaining), report.certified, report.exhaustive)
