import re
from dataclasses import dataclass, field, replace
from enum import Enum, auto
from functools import cached_property
from typing import Iterable, Iterator

NAME_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


# Exceptions ###################


class IncaError(Exception):
    """Base class for every error raised by the inca_foams packages"""


class InvalidDiagramError(IncaError):
    def __init__(self, violations: list["Violation"]) -> None:
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class MoveNotApplicableError(IncaError):
    def __init__(self, kind, reason: str) -> None:
        self.kind = kind
        self.reason = reason
        super().__init__(f"{kind.name if hasattr(kind, 'name') else kind} not applicable: {reason}")


class ResourceLimitError(IncaError):
    def __init__(self, limit_name: str, limit: int, requested: int) -> None:
        self.limit_name = limit_name
        self.limit = limit
        self.requested = requested
        super().__init__(f"{limit_name} exceeded: requested {requested}, limit is {limit}")


class NumericalError(IncaError):
    def __init__(self, status: str) -> None:
        self.status = status
        super().__init__(f"SDP solver did not converge (status: {status})")


# Basic types ###################


class Sign(Enum):
    """Direction of an interaction; POS points right along the edge, NEG left"""

    POS = 1
    NEG = -1

    def __neg__(self) -> "Sign":
        return Sign.NEG if self is Sign.POS else Sign.POS

    @property
    def symbol(self) -> str:
        return "+" if self is Sign.POS else "-"

    @classmethod
    def from_symbol(cls, symbol: str) -> "Sign":
        match symbol:
            case "+":
                return cls.POS
            case "-":
                return cls.NEG
            case _:
                raise ValueError(f"Unknown sign symbol {symbol!r}")


class Kind(Enum):
    PATH = auto()
    CYCLE = auto()

    @property
    def keyword(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Component:
    name: str
    kind: Kind
    size: int

    @property
    def n_edges(self) -> int:
        return self.size if self.kind is Kind.CYCLE else self.size - 1

    def head_position(self, tail: int) -> int:
        return (tail + 1) % self.size if self.kind is Kind.CYCLE else tail + 1


@dataclass(frozen=True, order=True)
class VertexRef:
    component: str
    position: int

    def __str__(self) -> str:
        return f"{self.component}.{self.position}"


@dataclass(frozen=True, order=True)
class EdgeRef:
    component: str
    tail: int

    def __str__(self) -> str:
        return f"{self.component}[{self.tail}]"


@dataclass(frozen=True)
class Interaction:
    edge: EdgeRef
    agent: VertexRef
    sign: Sign

    def sort_key(self) -> tuple:
        return (self.edge, self.agent, self.sign.value)


@dataclass(frozen=True)
class Violation:
    reference: str
    message: str

    def __str__(self) -> str:
        return f"{self.reference}: {self.message}"


# Gauss diagram ###################


@dataclass(frozen=True)
class GaussDiagram:
    """
    The triple (G, S, phi): an ordered list of path/cycle components, the signed interactions
    (at most one per edge) and the explicitly marked agents.

    Values are immutable; every operation returns a new diagram.
    """

    components: tuple[Component, ...]
    interactions: tuple[Interaction, ...] = ()
    marks: frozenset[VertexRef] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "interactions", tuple(sorted(self.interactions, key=Interaction.sort_key)))
        object.__setattr__(self, "marks", frozenset(self.marks))

    # Structure

    @cached_property
    def _components_by_name(self) -> dict[str, Component]:
        return {c.name: c for c in self.components}

    def component(self, name: str) -> Component:
        return self._components_by_name[name]

    def vertices(self) -> Iterator[VertexRef]:
        for c in self.components:
            for position in range(c.size):
                yield VertexRef(c.name, position)

    def edges(self) -> Iterator[EdgeRef]:
        for c in self.components:
            for tail in range(c.n_edges):
                yield EdgeRef(c.name, tail)

    @property
    def n_vertices(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def n_edges(self) -> int:
        return sum(c.n_edges for c in self.components)

    def tail_of(self, edge: EdgeRef) -> VertexRef:
        return VertexRef(edge.component, edge.tail)

    def head_of(self, edge: EdgeRef) -> VertexRef:
        return VertexRef(edge.component, self.component(edge.component).head_position(edge.tail))

    def out_edge(self, vertex: VertexRef) -> EdgeRef | None:
        c = self.component(vertex.component)
        if vertex.position < c.n_edges:
            return EdgeRef(c.name, vertex.position)
        return None

    def in_edge(self, vertex: VertexRef) -> EdgeRef | None:
        c = self.component(vertex.component)
        if c.kind is Kind.CYCLE:
            return EdgeRef(c.name, (vertex.position - 1) % c.size)
        if vertex.position > 0:
            return EdgeRef(c.name, vertex.position - 1)
        return None

    def contains_vertex(self, vertex: VertexRef) -> bool:
        c = self._components_by_name.get(vertex.component)
        return c is not None and 0 <= vertex.position < c.size

    def contains_edge(self, edge: EdgeRef) -> bool:
        c = self._components_by_name.get(edge.component)
        return c is not None and 0 <= edge.tail < c.n_edges

    # Interaction function

    @cached_property
    def _interaction_by_edge(self) -> dict[EdgeRef, Interaction]:
        return {i.edge: i for i in self.interactions}

    @cached_property
    def _actions_by_agent(self) -> dict[VertexRef, tuple[Interaction, ...]]:
        actions: dict[VertexRef, list[Interaction]] = {}
        for i in self.interactions:
            actions.setdefault(i.agent, []).append(i)
        return {agent: tuple(acts) for agent, acts in actions.items()}

    def interaction_on(self, edge: EdgeRef) -> Interaction | None:
        return self._interaction_by_edge.get(edge)

    def is_bare(self, edge: EdgeRef) -> bool:
        return edge not in self._interaction_by_edge

    def bare_edges(self) -> list[EdgeRef]:
        return [e for e in self.edges() if self.is_bare(e)]

    def actions_of(self, vertex: VertexRef) -> tuple[Interaction, ...]:
        return self._actions_by_agent.get(vertex, ())

    def support(self) -> frozenset[VertexRef]:
        return frozenset(self._actions_by_agent)

    def agents(self) -> frozenset[VertexRef]:
        """Acting agents together with explicitly marked ones"""
        return self.support() | self.marks

    def is_acting(self, vertex: VertexRef) -> bool:
        return vertex in self._actions_by_agent

    def is_inert(self, vertex: VertexRef) -> bool:
        """Neither acting nor marked"""
        return vertex not in self._actions_by_agent and vertex not in self.marks

    # Derived diagrams

    def evolve(self, **changes) -> "GaussDiagram":
        return replace(self, **changes)

    def trivial(self) -> "GaussDiagram":
        """The trivial diagram (G, {}, phi_empty) on the same graph"""
        return GaussDiagram(self.components)

    def restrict(self, agents: Iterable[VertexRef], keep_marks: bool = True) -> "GaussDiagram":
        """Keeps only the interactions (and, optionally, marks) of the given agents"""
        agents = frozenset(agents)
        return GaussDiagram(
            self.components,
            tuple(i for i in self.interactions if i.agent in agents),
            self.marks & agents if keep_marks else frozenset(),
        )

    def __str__(self) -> str:
        comps = ", ".join(f"{c.name}:{c.kind.keyword}({c.size})" for c in self.components)
        ints = ", ".join(f"{i.edge} by {i.agent} {i.sign.symbol}" for i in self.interactions)
        return f"GaussDiagram([{comps}]; [{ints}]; marks={sorted(str(m) for m in self.marks)})"


# Validation ###################


def validate(diagram: GaussDiagram) -> list[Violation]:
    """Checks every type invariant of a Gauss diagram; an empty list means valid"""
    violations: list[Violation] = []
    sizes: dict[str, Component] = {}
    for c in diagram.components:
        if not isinstance(c.name, str) or not NAME_PATTERN.match(c.name):
            violations.append(Violation(f"component {c.name!r}", "invalid component name"))
        if c.name in sizes:
            violations.append(Violation(f"component {c.name}", "duplicate component name"))
        if not isinstance(c.size, int) or c.size < 1:
            violations.append(Violation(f"component {c.name}", f"size must be a positive integer, got {c.size!r}"))
            continue
        sizes[c.name] = c

    def check_vertex(vertex: VertexRef, what: str) -> bool:
        c = sizes.get(vertex.component)
        if c is None:
            violations.append(Violation(f"{what} {vertex}", "unknown component"))
            return False
        if not 0 <= vertex.position < c.size:
            violations.append(Violation(f"{what} {vertex}", f"position out of range for size {c.size}"))
            return False
        return True

    seen_edges: set[EdgeRef] = set()
    for i in diagram.interactions:
        c = sizes.get(i.edge.component)
        if c is None:
            violations.append(Violation(f"edge {i.edge}", "unknown component"))
        elif not 0 <= i.edge.tail < c.n_edges:
            violations.append(Violation(f"edge {i.edge}", f"no such edge in {c.kind.keyword} of size {c.size}"))
        if i.edge in seen_edges:
            violations.append(Violation(f"edge {i.edge}", "more than one interaction on the edge"))
        seen_edges.add(i.edge)
        check_vertex(i.agent, "agent")
    for mark in sorted(diagram.marks):
        check_vertex(mark, "mark")
    return violations


def require_valid(diagram: GaussDiagram) -> GaussDiagram:
    violations = validate(diagram)
    if violations:
        raise InvalidDiagramError(violations)
    return diagram


def support(diagram: GaussDiagram) -> frozenset[VertexRef]:
    """Vertices that are the agent of at least one interaction"""
    return require_valid(diagram).support()
