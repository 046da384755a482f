"""
Invertible local rewrites of Gauss diagrams: Reidemeister I/II/III, (de)stabilization and
false (de)stabilization.

Every rewrite has a checker returning the reason it is not applicable (or None) and an
application function. `apply_move` dispatches on the instance kind; `inverse_move` returns the
instance undoing it, located in the rewritten diagram.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum, auto
from itertools import chain, combinations
from typing import Iterable

from gauss_diagram.classes import (
    Component,
    EdgeRef,
    GaussDiagram,
    Interaction,
    Kind,
    MoveNotApplicableError,
    Sign,
    VertexRef,
    require_valid,
)

logger = logging.getLogger(__name__)


class MoveKind(Enum):
    R1_REMOVE = auto()
    R1_ADD = auto()
    R2_CANCEL = auto()
    R2_INSERT = auto()
    R3_SLIDE = auto()
    R3_UNSLIDE = auto()
    DESTAB = auto()
    STAB = auto()
    FALSE_DESTAB = auto()
    FALSE_STAB = auto()

    @property
    def is_addition(self) -> bool:
        """Additions have infinitely many sites in general; they are enumerated only on request"""
        return self in (MoveKind.R1_ADD, MoveKind.R2_INSERT, MoveKind.STAB, MoveKind.FALSE_STAB)


REIDEMEISTER = frozenset(
    {
        MoveKind.R1_REMOVE,
        MoveKind.R1_ADD,
        MoveKind.R2_CANCEL,
        MoveKind.R2_INSERT,
        MoveKind.R3_SLIDE,
        MoveKind.R3_UNSLIDE,
    }
)
STABILIZATION = frozenset({MoveKind.DESTAB, MoveKind.STAB})
FALSE_STABILIZATION = frozenset({MoveKind.FALSE_DESTAB, MoveKind.FALSE_STAB})
ALL_MOVES = REIDEMEISTER | STABILIZATION | FALSE_STABILIZATION


class Side(Enum):
    BEFORE = auto()
    AFTER = auto()


@dataclass(frozen=True)
class MoveInstance:
    """
    A fully located move. Fields used per kind:

    R1_REMOVE edge | R1_ADD edge, agent, sign | R2_CANCEL vertex | R2_INSERT vertex, agent, sign
    R3_SLIDE / R3_UNSLIDE agent, edge | DESTAB edge, vertex (the endpoint removed)
    STAB vertex, side | FALSE_DESTAB edge | FALSE_STAB vertex, side, moved, marks
    """

    kind: MoveKind
    edge: EdgeRef | None = None
    vertex: VertexRef | None = None
    agent: VertexRef | None = None
    sign: Sign | None = None
    side: Side | None = None
    moved: frozenset[EdgeRef] = field(default_factory=frozenset)
    marks: tuple[bool, bool] = (False, False)

    def sort_key(self) -> tuple:
        return (
            self.kind.value,
            self.edge or EdgeRef("", -1),
            self.vertex or VertexRef("", -1),
            self.agent or VertexRef("", -1),
            self.sign.value if self.sign else 0,
            self.side.value if self.side else 0,
            tuple(sorted(self.moved)),
            self.marks,
        )

    def __str__(self) -> str:
        parts = [self.kind.name]
        if self.edge is not None:
            parts.append(str(self.edge))
        if self.vertex is not None:
            parts.append(f"at {self.vertex}")
        if self.agent is not None:
            parts.append(f"by {self.agent}")
        if self.sign is not None:
            parts.append(self.sign.symbol)
        if self.side is not None:
            parts.append(self.side.name.lower())
        if self.moved:
            parts.append("moving " + ",".join(str(e) for e in sorted(self.moved)))
        if self.kind is MoveKind.FALSE_STAB:
            parts.append(f"marks={int(self.marks[0])}{int(self.marks[1])}")
        return " ".join(parts)


# Rewiring helpers ###################


@dataclass(frozen=True)
class Rewired:
    diagram: GaussDiagram
    vertex_map: dict[VertexRef, VertexRef]
    edge_map: dict[EdgeRef, EdgeRef]


def _replace_component(components: tuple[Component, ...], name: str, size: int) -> tuple[Component, ...]:
    return tuple(Component(c.name, c.kind, size) if c.name == name else c for c in components)


def _contract(diagram: GaussDiagram, edge: EdgeRef, removed: VertexRef) -> Rewired:
    """Contracts a bare edge, merging `removed` into the other endpoint"""
    comp = diagram.component(edge.component)
    tail, head = diagram.tail_of(edge), diagram.head_of(edge)
    keeper = head if removed == tail else tail
    r = removed.position

    def shift(p: int) -> int:
        return p - 1 if p > r else p

    vertex_map = {}
    for v in diagram.vertices():
        if v.component != comp.name:
            vertex_map[v] = v
        elif v == removed:
            vertex_map[v] = VertexRef(comp.name, shift(keeper.position))
        else:
            vertex_map[v] = VertexRef(comp.name, shift(v.position))

    edge_map = {}
    for e in diagram.edges():
        if e == edge:
            continue
        if e.component != comp.name:
            edge_map[e] = e
        elif removed == head and e.tail == r:
            # the edge leaving the removed head now leaves the keeper
            edge_map[e] = EdgeRef(comp.name, shift(tail.position))
        else:
            edge_map[e] = EdgeRef(comp.name, shift(e.tail))

    interactions = tuple(
        Interaction(edge_map[i.edge], vertex_map[i.agent], i.sign) for i in diagram.interactions if i.edge != edge
    )
    rewired = GaussDiagram(
        _replace_component(diagram.components, comp.name, comp.size - 1),
        interactions,
        frozenset(vertex_map[m] for m in diagram.marks),
    )
    return Rewired(rewired, vertex_map, edge_map)


def _split(diagram: GaussDiagram, vertex: VertexRef, side: Side) -> tuple[Rewired, VertexRef, EdgeRef]:
    """Inserts a fresh vertex next to `vertex`, joined to it by a bare edge"""
    comp = diagram.component(vertex.component)
    p = vertex.position
    inserted = p + 1 if side is Side.AFTER else p

    def shift(q: int) -> int:
        return q + 1 if q >= inserted else q

    vertex_map = {v: VertexRef(v.component, shift(v.position)) if v.component == comp.name else v for v in diagram.vertices()}
    edge_map = {}
    for e in diagram.edges():
        if e.component != comp.name:
            edge_map[e] = e
        elif side is Side.AFTER and e.tail == p:
            edge_map[e] = EdgeRef(comp.name, inserted)
        else:
            edge_map[e] = EdgeRef(comp.name, shift(e.tail))
    interactions = tuple(Interaction(edge_map[i.edge], vertex_map[i.agent], i.sign) for i in diagram.interactions)
    rewired = GaussDiagram(
        _replace_component(diagram.components, comp.name, comp.size + 1),
        interactions,
        frozenset(vertex_map[m] for m in diagram.marks),
    )
    new_vertex = VertexRef(comp.name, inserted)
    new_edge = EdgeRef(comp.name, p if side is Side.AFTER else inserted)
    return Rewired(rewired, vertex_map, edge_map), new_vertex, new_edge


def _with_interactions(diagram: GaussDiagram, remove: Iterable[EdgeRef], add: Iterable[Interaction]) -> GaussDiagram:
    remove = set(remove)
    kept = [i for i in diagram.interactions if i.edge not in remove]
    return diagram.evolve(interactions=tuple(kept) + tuple(add))


def _identity(diagram: GaussDiagram) -> tuple[dict, dict]:
    return {v: v for v in diagram.vertices()}, {e: e for e in diagram.edges()}


# Preconditions ###################


def _r1_remove_problem(diagram: GaussDiagram, edge: EdgeRef) -> str | None:
    if not diagram.contains_edge(edge):
        return f"no edge {edge}"
    interaction = diagram.interaction_on(edge)
    if interaction is None:
        return f"edge {edge} is bare"
    if interaction.agent not in (diagram.tail_of(edge), diagram.head_of(edge)):
        return f"agent {interaction.agent} is not an endpoint of {edge}"
    return None


def _r1_add_problem(diagram: GaussDiagram, edge: EdgeRef, agent: VertexRef) -> str | None:
    if not diagram.contains_edge(edge):
        return f"no edge {edge}"
    if not diagram.is_bare(edge):
        return f"edge {edge} already carries an interaction"
    if agent not in (diagram.tail_of(edge), diagram.head_of(edge)):
        return f"agent {agent} is not an endpoint of {edge}"
    return None


def _r2_edges(diagram: GaussDiagram, b: VertexRef) -> tuple[EdgeRef, EdgeRef] | str:
    if not diagram.contains_vertex(b):
        return f"no vertex {b}"
    e1, e2 = diagram.in_edge(b), diagram.out_edge(b)
    if e1 is None or e2 is None or e1 == e2:
        return f"{b} does not have two distinct incident edges"
    if not diagram.is_inert(b):
        return f"{b} is in the agent set"
    return e1, e2


def _r2_cancel_problem(diagram: GaussDiagram, b: VertexRef) -> str | None:
    edges = _r2_edges(diagram, b)
    if isinstance(edges, str):
        return edges
    i1, i2 = (diagram.interaction_on(e) for e in edges)
    if i1 is None or i2 is None:
        return f"an edge incident to {b} is bare"
    if i1.agent != i2.agent:
        return "the two interactions have different agents"
    if i1.sign is i2.sign:
        return "the two interactions have equal signs"
    return None


def _r2_insert_problem(diagram: GaussDiagram, b: VertexRef, agent: VertexRef) -> str | None:
    edges = _r2_edges(diagram, b)
    if isinstance(edges, str):
        return edges
    if not all(diagram.is_bare(e) for e in edges):
        return f"an edge incident to {b} carries an interaction"
    if not diagram.contains_vertex(agent) or agent == b:
        return f"agent {agent} must be a vertex other than {b}"
    return None


def _r3_pairs(diagram: GaussDiagram, agent: VertexRef, edge: EdgeRef, forward: bool) -> list | str:
    """
    Sites of an R3 move. forward=True checks R3_SLIDE (actions move from b to b'), otherwise
    R3_UNSLIDE (actions move back from b' to b). Returns (f, g, t) triples or a reason.
    """
    if not diagram.contains_edge(edge):
        return f"no edge {edge}"
    carried = diagram.interaction_on(edge)
    if carried is None or carried.agent != agent:
        return f"edge {edge} is not acted on by {agent}"
    s = carried.sign
    b, b_prime = diagram.tail_of(edge), diagram.head_of(edge)
    if len({b, b_prime, agent}) < 3:
        return "b, b' and the agent must be distinct"
    source, target = (b, b_prime) if forward else (b_prime, b)
    if not diagram.actions_of(source):
        return f"{source} does not act"
    if diagram.actions_of(target):
        return f"{target} already acts"
    if b_prime in diagram.marks:
        return f"{b_prime} is marked"
    pairs = []
    for action in diagram.actions_of(source):
        if forward:
            f = action.edge
            y = diagram.head_of(f)
            g = diagram.out_edge(y)
            other = g
        else:
            g = action.edge
            y = diagram.tail_of(g)
            f = diagram.in_edge(y)
            other = f
        if other is None or f == g:
            return f"no successor strand edge at {y}"
        partner = diagram.interaction_on(other)
        if partner is None or partner.agent != agent or partner.sign is not s:
            return f"edge {other} is not acted on by {agent} with sign {s.symbol}"
        if not diagram.is_inert(y):
            return f"{y} is in the agent set"
        if y in (b, b_prime, agent):
            return f"{y} coincides with a move vertex"
        pairs.append((f, g, action.sign))
    return pairs


def _destab_problem(diagram: GaussDiagram, edge: EdgeRef, removed: VertexRef | None) -> str | None:
    if not diagram.contains_edge(edge):
        return f"no edge {edge}"
    if not diagram.is_bare(edge):
        return f"edge {edge} carries an interaction"
    tail, head = diagram.tail_of(edge), diagram.head_of(edge)
    if tail == head:
        return f"edge {edge} is a loop"
    if removed is not None:
        if removed not in (tail, head):
            return f"{removed} is not an endpoint of {edge}"
        if not diagram.is_inert(removed):
            return f"{removed} is in the agent set"
    elif not (diagram.is_inert(tail) or diagram.is_inert(head)):
        return "both endpoints are in the agent set"
    return None


def _false_destab_problem(diagram: GaussDiagram, edge: EdgeRef) -> str | None:
    if not diagram.contains_edge(edge):
        return f"no edge {edge}"
    if not diagram.is_bare(edge):
        return f"edge {edge} carries an interaction"
    if diagram.tail_of(edge) == diagram.head_of(edge):
        return f"edge {edge} is a loop"
    return None


def _false_stab_problem(diagram: GaussDiagram, vertex: VertexRef, moved: frozenset[EdgeRef], marks) -> str | None:
    if not diagram.contains_vertex(vertex):
        return f"no vertex {vertex}"
    own = {i.edge for i in diagram.actions_of(vertex)}
    if not moved <= own:
        return f"moved edges are not all acted on by {vertex}"
    if (vertex in diagram.marks) != any(marks):
        return "mark distribution does not match the vertex mark"
    return None


def problem(diagram: GaussDiagram, move: MoveInstance) -> str | None:
    """Why `move` cannot be applied to `diagram`, or None when it can"""
    match move.kind:
        case MoveKind.R1_REMOVE:
            return _r1_remove_problem(diagram, move.edge)
        case MoveKind.R1_ADD:
            return _r1_add_problem(diagram, move.edge, move.agent)
        case MoveKind.R2_CANCEL:
            return _r2_cancel_problem(diagram, move.vertex)
        case MoveKind.R2_INSERT:
            return _r2_insert_problem(diagram, move.vertex, move.agent)
        case MoveKind.R3_SLIDE | MoveKind.R3_UNSLIDE:
            pairs = _r3_pairs(diagram, move.agent, move.edge, move.kind is MoveKind.R3_SLIDE)
            return pairs if isinstance(pairs, str) else None
        case MoveKind.DESTAB:
            return _destab_problem(diagram, move.edge, move.vertex)
        case MoveKind.STAB:
            return None if diagram.contains_vertex(move.vertex) else f"no vertex {move.vertex}"
        case MoveKind.FALSE_DESTAB:
            return _false_destab_problem(diagram, move.edge)
        case MoveKind.FALSE_STAB:
            return _false_stab_problem(diagram, move.vertex, move.moved, move.marks)
        case _:
            raise Exception(f"Unknown move kind {move.kind}")


# Application ###################


def _default_removed(diagram: GaussDiagram, edge: EdgeRef) -> VertexRef:
    head = diagram.head_of(edge)
    return head if diagram.is_inert(head) else diagram.tail_of(edge)


def apply_move_tracked(diagram: GaussDiagram, move: MoveInstance) -> Rewired:
    """Applies `move`, also returning where every vertex and surviving edge went"""
    reason = problem(diagram, move)
    if reason is not None:
        raise MoveNotApplicableError(move.kind, reason)

    match move.kind:
        case MoveKind.R1_REMOVE:
            result = _with_interactions(diagram, [move.edge], [])
        case MoveKind.R1_ADD:
            result = _with_interactions(diagram, [], [Interaction(move.edge, move.agent, move.sign)])
        case MoveKind.R2_CANCEL:
            result = _with_interactions(diagram, [diagram.in_edge(move.vertex), diagram.out_edge(move.vertex)], [])
        case MoveKind.R2_INSERT:
            e1, e2 = diagram.in_edge(move.vertex), diagram.out_edge(move.vertex)
            result = _with_interactions(
                diagram, [], [Interaction(e1, move.agent, move.sign), Interaction(e2, move.agent, -move.sign)]
            )
        case MoveKind.R3_SLIDE | MoveKind.R3_UNSLIDE:
            forward = move.kind is MoveKind.R3_SLIDE
            pairs = _r3_pairs(diagram, move.agent, move.edge, forward)
            s = diagram.interaction_on(move.edge).sign
            b, b_prime = diagram.tail_of(move.edge), diagram.head_of(move.edge)
            added = []
            for f, g, t in pairs:
                if forward:
                    added += [Interaction(f, move.agent, s), Interaction(g, b_prime, t)]
                else:
                    added += [Interaction(f, b, t), Interaction(g, move.agent, s)]
            touched = [e for f, g, _ in pairs for e in (f, g)]
            result = _with_interactions(diagram, touched, added)
        case MoveKind.DESTAB:
            removed = move.vertex or _default_removed(diagram, move.edge)
            return _contract(diagram, move.edge, removed)
        case MoveKind.STAB:
            rewired, _, _ = _split(diagram, move.vertex, move.side)
            return rewired
        case MoveKind.FALSE_DESTAB:
            return _contract(diagram, move.edge, diagram.head_of(move.edge))
        case MoveKind.FALSE_STAB:
            rewired, new_vertex, _ = _split(diagram, move.vertex, move.side)
            kept = rewired.vertex_map[move.vertex]
            moved = {rewired.edge_map[e] for e in move.moved}
            interactions = tuple(
                Interaction(i.edge, new_vertex, i.sign) if i.edge in moved else i for i in rewired.diagram.interactions
            )
            marks = set(rewired.diagram.marks) - {kept}
            if move.marks[0]:
                marks.add(kept)
            if move.marks[1]:
                marks.add(new_vertex)
            split = rewired.diagram.evolve(interactions=interactions, marks=frozenset(marks))
            return Rewired(split, rewired.vertex_map, rewired.edge_map)
    vertex_map, edge_map = _identity(diagram)
    return Rewired(result, vertex_map, edge_map)


def apply_move(diagram: GaussDiagram, move: MoveInstance) -> GaussDiagram:
    return apply_move_tracked(diagram, move).diagram


def inverse_move(diagram: GaussDiagram, move: MoveInstance) -> MoveInstance:
    """The move undoing `move`, located in apply_move(diagram, move)"""
    match move.kind:
        case MoveKind.R1_REMOVE:
            i = diagram.interaction_on(move.edge)
            return MoveInstance(MoveKind.R1_ADD, edge=move.edge, agent=i.agent, sign=i.sign)
        case MoveKind.R1_ADD:
            return MoveInstance(MoveKind.R1_REMOVE, edge=move.edge)
        case MoveKind.R2_CANCEL:
            i = diagram.interaction_on(diagram.in_edge(move.vertex))
            return MoveInstance(MoveKind.R2_INSERT, vertex=move.vertex, agent=i.agent, sign=i.sign)
        case MoveKind.R2_INSERT:
            return MoveInstance(MoveKind.R2_CANCEL, vertex=move.vertex)
        case MoveKind.R3_SLIDE:
            return MoveInstance(MoveKind.R3_UNSLIDE, agent=move.agent, edge=move.edge)
        case MoveKind.R3_UNSLIDE:
            return MoveInstance(MoveKind.R3_SLIDE, agent=move.agent, edge=move.edge)
        case MoveKind.DESTAB:
            removed = move.vertex or _default_removed(diagram, move.edge)
            rewired = _contract(diagram, move.edge, removed)
            keeper = rewired.vertex_map[removed]
            side = Side.AFTER if removed == diagram.head_of(move.edge) else Side.BEFORE
            return MoveInstance(MoveKind.STAB, vertex=keeper, side=side)
        case MoveKind.STAB:
            _, new_vertex, new_edge = _split(diagram, move.vertex, move.side)
            return MoveInstance(MoveKind.DESTAB, edge=new_edge, vertex=new_vertex)
        case MoveKind.FALSE_DESTAB:
            tail, head = diagram.tail_of(move.edge), diagram.head_of(move.edge)
            rewired = _contract(diagram, move.edge, head)
            moved = frozenset(rewired.edge_map[i.edge] for i in diagram.actions_of(head))
            marks = (tail in diagram.marks, head in diagram.marks)
            return MoveInstance(
                MoveKind.FALSE_STAB, vertex=rewired.vertex_map[tail], side=Side.AFTER, moved=moved, marks=marks
            )
        case MoveKind.FALSE_STAB:
            _, _, new_edge = _split(diagram, move.vertex, move.side)
            return MoveInstance(MoveKind.FALSE_DESTAB, edge=new_edge)
        case _:
            raise Exception(f"Unknown move kind {move.kind}")


# Named operations ###################


def r1_remove(diagram: GaussDiagram, edge: EdgeRef) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.R1_REMOVE, edge=edge))


def r1_add(diagram: GaussDiagram, edge: EdgeRef, agent: VertexRef, sign: Sign) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.R1_ADD, edge=edge, agent=agent, sign=sign))


def r2_cancel(diagram: GaussDiagram, b: VertexRef) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.R2_CANCEL, vertex=b))


def r2_insert(diagram: GaussDiagram, b: VertexRef, agent: VertexRef, sign: Sign) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.R2_INSERT, vertex=b, agent=agent, sign=sign))


def r3_slide(diagram: GaussDiagram, c: VertexRef, edge: EdgeRef) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.R3_SLIDE, agent=c, edge=edge))


def r3_unslide(diagram: GaussDiagram, c: VertexRef, edge: EdgeRef) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.R3_UNSLIDE, agent=c, edge=edge))


def destabilize(diagram: GaussDiagram, edge: EdgeRef, removed: VertexRef | None = None) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.DESTAB, edge=edge, vertex=removed))


def stabilize(diagram: GaussDiagram, vertex: VertexRef, side: Side = Side.AFTER) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.STAB, vertex=vertex, side=side))


def false_destabilize(diagram: GaussDiagram, edge: EdgeRef) -> GaussDiagram:
    return apply_move(diagram, MoveInstance(MoveKind.FALSE_DESTAB, edge=edge))


def false_stabilize(
    diagram: GaussDiagram,
    vertex: VertexRef,
    side: Side = Side.AFTER,
    moved: Iterable[EdgeRef] = (),
    marks: tuple[bool, bool] | None = None,
) -> GaussDiagram:
    if marks is None:
        marks = (vertex in diagram.marks, False)
    move = MoveInstance(MoveKind.FALSE_STAB, vertex=vertex, side=side, moved=frozenset(moved), marks=marks)
    return apply_move(diagram, move)


# Enumeration ###################

FALSE_STAB_SUBSET_LIMIT = 6


def _candidates(diagram: GaussDiagram, kind: MoveKind) -> Iterable[MoveInstance]:
    match kind:
        case MoveKind.R1_REMOVE:
            for e in diagram.edges():
                yield MoveInstance(kind, edge=e)
        case MoveKind.R1_ADD:
            for e in diagram.bare_edges():
                for agent in sorted({diagram.tail_of(e), diagram.head_of(e)}):
                    for sign in Sign:
                        yield MoveInstance(kind, edge=e, agent=agent, sign=sign)
        case MoveKind.R2_CANCEL:
            for v in diagram.vertices():
                yield MoveInstance(kind, vertex=v)
        case MoveKind.R2_INSERT:
            vertices = list(diagram.vertices())
            for b in vertices:
                if isinstance(_r2_edges(diagram, b), str):
                    continue
                for agent in vertices:
                    for sign in Sign:
                        yield MoveInstance(kind, vertex=b, agent=agent, sign=sign)
        case MoveKind.R3_SLIDE | MoveKind.R3_UNSLIDE:
            for i in diagram.interactions:
                yield MoveInstance(kind, agent=i.agent, edge=i.edge)
        case MoveKind.DESTAB:
            for e in diagram.bare_edges():
                yield MoveInstance(kind, edge=e)
        case MoveKind.STAB:
            for v in diagram.vertices():
                for side in Side:
                    yield MoveInstance(kind, vertex=v, side=side)
        case MoveKind.FALSE_DESTAB:
            for e in diagram.bare_edges():
                yield MoveInstance(kind, edge=e)
        case MoveKind.FALSE_STAB:
            for v in diagram.vertices():
                own = sorted(i.edge for i in diagram.actions_of(v))
                if len(own) > FALSE_STAB_SUBSET_LIMIT:
                    subsets = chain([()], ((e,) for e in own))
                else:
                    subsets = chain.from_iterable(combinations(own, k) for k in range(len(own) + 1))
                mark_options = [(True, False), (False, True), (True, True)] if v in diagram.marks else [(False, False)]
                for subset in subsets:
                    for side in Side:
                        for marks in mark_options:
                            yield MoveInstance(kind, vertex=v, side=side, moved=frozenset(subset), marks=marks)


def enumerate_moves(
    diagram: GaussDiagram, kinds: Iterable[MoveKind] = ALL_MOVES, include_adds: bool = False
) -> list[MoveInstance]:
    """
    Every applicable instance of the requested kinds. Addition kinds (R1_ADD, R2_INSERT, STAB,
    FALSE_STAB) are only listed with include_adds, restricted to sites already in the diagram.
    """
    require_valid(diagram)
    moves = []
    for kind in sorted(set(kinds), key=lambda k: k.value):
        if kind.is_addition and not include_adds:
            continue
        moves += [m for m in _candidates(diagram, kind) if problem(diagram, m) is None]
    logger.debug("Enumerated %d moves", len(moves))
    return moves
