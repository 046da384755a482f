"""
Quandle colourings of Gauss diagrams.

A colouring assigns an operation to every acting agent and a colour to every vertex so that
head = tail ▷ agent on every POS interaction (the operation's registered inverse for NEG) and
head = tail on every bare edge.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from foam_invariants.quandles import MultiQuandle, require_quandle
from gauss_diagram.canonical import canonical_form
from gauss_diagram.classes import GaussDiagram, Sign, VertexRef, require_valid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Coloring:
    ops: dict[VertexRef, str]
    colors: dict[VertexRef, int]


@dataclass(frozen=True)
class _Constraint:
    tail: int
    agent: int  # -1 on bare edges
    head: int
    sign: Sign | None


class _ColoringProblem:
    """Flat-index constraint system solved by backtracking with forward propagation"""

    def __init__(self, diagram: GaussDiagram, quandle: MultiQuandle) -> None:
        self.diagram = diagram
        self.quandle = quandle
        self.vertices = list(diagram.vertices())
        index = {v: i for i, v in enumerate(self.vertices)}
        self.n = len(self.vertices)
        self.agents = sorted(diagram.support())
        self.constraints = []
        for e in diagram.edges():
            tail, head = index[diagram.tail_of(e)], index[diagram.head_of(e)]
            interaction = diagram.interaction_on(e)
            if interaction is None:
                self.constraints.append(_Constraint(tail, -1, head, None))
            else:
                self.constraints.append(_Constraint(tail, index[interaction.agent], head, interaction.sign))
        self.agent_index = {index[a]: a for a in self.agents}

    def _tables(self, assignment: dict[int, str]) -> list[tuple[np.ndarray, np.ndarray] | None]:
        """(forward, backward) lookup per constraint for one op assignment"""
        tables = []
        for c in self.constraints:
            if c.sign is None:
                tables.append(None)
                continue
            op = self.quandle.op(assignment[c.agent])
            inverse = self.quandle.op(op.inverse)
            if c.sign is Sign.POS:
                tables.append((op.table, inverse.table))
            else:
                tables.append((inverse.table, op.table))
        return tables

    def _propagate(self, colors: list[int], tables) -> bool:
        changed = True
        while changed:
            changed = False
            for c, lookup in zip(self.constraints, tables):
                t, h = colors[c.tail], colors[c.head]
                if lookup is None:
                    if t >= 0 and h < 0:
                        colors[c.head] = t
                        changed = True
                    elif h >= 0 and t < 0:
                        colors[c.tail] = h
                        changed = True
                    elif t >= 0 and t != h:
                        return False
                    continue
                a = colors[c.agent]
                if a < 0:
                    continue
                forward, backward = lookup
                if t >= 0:
                    value = int(forward[t, a])
                    if h < 0:
                        colors[c.head] = value
                        changed = True
                    elif h != value:
                        return False
                elif h >= 0:
                    colors[c.tail] = int(backward[h, a])
                    changed = True
        return True

    def _solve(self, colors: list[int], tables) -> Iterator[list[int]]:
        if not self._propagate(colors, tables):
            return
        try:
            free = colors.index(-1)
        except ValueError:
            yield colors
            return
        for value in range(self.quandle.size):
            trial = list(colors)
            trial[free] = value
            yield from self._solve(trial, tables)

    def assignments(self) -> Iterator[dict[int, str]]:
        flat_agents = sorted(self.agent_index)
        for ops in product(self.quandle.op_names, repeat=len(flat_agents)):
            yield dict(zip(flat_agents, ops))

    def solutions(self) -> Iterator[tuple[dict[int, str], list[int]]]:
        for assignment in self.assignments():
            tables = self._tables(assignment)
            for colors in self._solve([-1] * self.n, tables):
                yield assignment, colors


def iter_colorings(diagram: GaussDiagram, quandle: MultiQuandle) -> Iterator[Coloring]:
    require_valid(diagram)
    require_quandle(quandle)
    problem = _ColoringProblem(diagram, quandle)
    for assignment, colors in problem.solutions():
        yield Coloring(
            {problem.agent_index[a]: op for a, op in assignment.items()},
            {v: c for v, c in zip(problem.vertices, colors)},
        )


def count_colorings(diagram: GaussDiagram, quandle: MultiQuandle) -> int:
    require_valid(diagram)
    require_quandle(quandle)
    problem = _ColoringProblem(diagram, quandle)
    count = sum(1 for _ in problem.solutions())
    logger.debug("%d colourings over %s", count, quandle.name)
    return count


def realized_triples(diagram: GaussDiagram, quandle: MultiQuandle) -> frozenset[tuple[int, int, int]]:
    """(tail, agent, head) colour triples occurring in some colouring"""
    require_valid(diagram)
    require_quandle(quandle)
    problem = _ColoringProblem(diagram, quandle)
    triples = set()
    for _, colors in problem.solutions():
        for c in problem.constraints:
            if c.sign is not None:
                triples.add((colors[c.tail], colors[c.agent], colors[c.head]))
    return frozenset(triples)


# Presentations ###################


@dataclass(frozen=True)
class Relation:
    head: str
    tail: str
    agent: str | None = None
    op: str | None = None
    sign: Sign | None = None

    def __str__(self) -> str:
        if self.op is None:
            return f"{self.head} = {self.tail}"
        symbol = "▷" if self.sign is Sign.POS else "◁"
        return f"{self.head} = {self.tail} {symbol}_{self.op} {self.agent}"


@dataclass(frozen=True)
class QuandlePresentation:
    generators: tuple[str, ...]
    op_symbols: tuple[str, ...]
    relations: tuple[Relation, ...]

    def __str__(self) -> str:
        lines = [f"generators: {' '.join(self.generators)}", f"ops: {' '.join(self.op_symbols)}"]
        lines += [str(r) for r in self.relations]
        return "\n".join(lines)


def quandle_presentation(diagram: GaussDiagram) -> QuandlePresentation:
    """One generator per vertex, one op symbol per acting agent, one relation per edge"""
    canonical = canonical_form(diagram).diagram
    vertices = list(canonical.vertices())
    generator = {v: f"x{i}" for i, v in enumerate(vertices)}
    op_symbol = {a: f"b{i}" for i, a in enumerate(sorted(canonical.support(), key=vertices.index))}
    relations = []
    for e in canonical.edges():
        tail, head = generator[canonical.tail_of(e)], generator[canonical.head_of(e)]
        interaction = canonical.interaction_on(e)
        if interaction is None:
            relations.append(Relation(head, tail))
        else:
            relations.append(
                Relation(head, tail, generator[interaction.agent], op_symbol[interaction.agent], interaction.sign)
            )
    return QuandlePresentation(tuple(generator.values()), tuple(op_symbol.values()), tuple(relations))
