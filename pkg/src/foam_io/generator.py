"""Seeded random diagrams and random move perturbations, used by tests and `inca gen`"""

import logging
from typing import Iterable, Sequence

import numpy as np

from gauss_diagram.classes import Component, EdgeRef, GaussDiagram, IncaError, Interaction, Kind, Sign, VertexRef
from gauss_diagram.moves import REIDEMEISTER, MoveInstance, MoveKind, apply_move, enumerate_moves

logger = logging.getLogger(__name__)


class InfeasibleSpecError(IncaError):
    pass


def component_names(n: int) -> list[str]:
    return [f"C{i}" for i in range(n)]


def random_diagram(
    shape: Sequence[tuple[Kind, int]],
    n_interactions: int,
    seed: int | None = None,
    n_marks: int = 0,
) -> GaussDiagram:
    """
    Components C0, C1, ... of the given kinds and sizes carrying exactly `n_interactions`
    interactions on distinct edges, agents and signs uniform, plus `n_marks` marked vertices.
    """
    components = tuple(Component(name, kind, size) for name, (kind, size) in zip(component_names(len(shape)), shape))
    for c in components:
        if c.size < 1:
            raise InfeasibleSpecError(f"component {c.name} must have at least one vertex, got {c.size}")
    edges = [(c.name, t) for c in components for t in range(c.n_edges)]
    vertices = [VertexRef(c.name, p) for c in components for p in range(c.size)]
    if not 0 <= n_interactions <= len(edges):
        raise InfeasibleSpecError(f"{n_interactions} interactions requested but the graph has {len(edges)} edges")
    if not 0 <= n_marks <= len(vertices):
        raise InfeasibleSpecError(f"{n_marks} marks requested but the graph has {len(vertices)} vertices")

    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(edges), size=n_interactions, replace=False)
    agents = rng.integers(len(vertices), size=n_interactions)
    signs = rng.integers(2, size=n_interactions)
    interactions = []
    for e, a, s in zip(chosen, agents, signs):
        name, tail = edges[e]
        interactions.append(Interaction(EdgeRef(name, int(tail)), vertices[a], Sign.POS if s else Sign.NEG))
    marks = frozenset(vertices[i] for i in rng.choice(len(vertices), size=n_marks, replace=False))
    return GaussDiagram(components, tuple(interactions), marks)


def random_small_diagram(seed: int | None = None, max_vertices: int = 20, max_components: int = 3) -> GaussDiagram:
    """Random shape with at most `max_vertices` vertices, then a random interaction count"""
    rng = np.random.default_rng(seed)
    n_components = int(rng.integers(1, max_components + 1))
    sizes = [1] * n_components
    for _ in range(int(rng.integers(0, max_vertices - n_components + 1))):
        sizes[int(rng.integers(n_components))] += 1
    shape = [(Kind.CYCLE if rng.random() < 0.5 else Kind.PATH, int(s)) for s in sizes]
    n_edges = sum(s if k is Kind.CYCLE else s - 1 for k, s in shape)
    n_interactions = int(rng.integers(0, n_edges + 1))
    n_marks = int(rng.integers(0, 2))
    return random_diagram(shape, n_interactions, seed=int(rng.integers(2**32)), n_marks=n_marks)


def perturb(
    diagram: GaussDiagram,
    steps: int,
    seed: int | None = None,
    kinds: Iterable[MoveKind] = REIDEMEISTER,
) -> tuple[GaussDiagram, list[MoveInstance]]:
    """
    Applies `steps` uniformly chosen enumerated moves of the given kinds (additions included).
    Stops early when no move applies; returns the result and the moves applied.
    """
    rng = np.random.default_rng(seed)
    kinds = frozenset(kinds)
    applied = []
    for _ in range(steps):
        moves = enumerate_moves(diagram, kinds, include_adds=True)
        if not moves:
            logger.info("No applicable move after %d steps", len(applied))
            break
        move = moves[int(rng.integers(len(moves)))]
        diagram = apply_move(diagram, move)
        applied.append(move)
    return diagram, applied
