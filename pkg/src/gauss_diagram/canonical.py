"""
Canonical forms of Gauss diagrams.

Codes identify diagrams up to component renaming, component reordering and rotation of cycles.
Orientation is never reversed. The labeling is found by colour refinement (ranks of sorted
signatures, so colours do not depend on input order) followed by individualization of tied
components and tied rotations; the least leaf code wins.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

from gauss_diagram.classes import Component, EdgeRef, GaussDiagram, Interaction, Kind, VertexRef, require_valid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    text: bytes

    def __str__(self) -> str:
        return self.text.decode()


@dataclass(frozen=True)
class Labeling:
    code: tuple
    order: tuple[int, ...]
    rotations: tuple[int, ...]


def _rank(keys: list) -> list[int]:
    ordinals = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [ordinals[key] for key in keys]


class ChainStructure(ABC):
    """A disjoint union of labelled paths and cycles to be canonically labelled"""

    kinds: list[Kind]
    sizes: list[int]

    def __init__(self, kinds: list[Kind], sizes: list[int]) -> None:
        self.kinds = kinds
        self.sizes = sizes
        self.offsets = []
        total = 0
        for size in sizes:
            self.offsets.append(total)
            total += size
        self.n = total
        self.pred = [-1] * total
        self.succ = [-1] * total
        self.owner = [0] * total
        for c, (kind, size) in enumerate(zip(kinds, sizes)):
            base = self.offsets[c]
            for p in range(size):
                self.owner[base + p] = c
                if kind is Kind.CYCLE:
                    self.pred[base + p] = base + (p - 1) % size
                    self.succ[base + p] = base + (p + 1) % size
                else:
                    self.pred[base + p] = base + p - 1 if p > 0 else -1
                    self.succ[base + p] = base + p + 1 if p < size - 1 else -1

    @abstractmethod
    def initial_keys(self) -> list[tuple]:
        pass

    def prepare(self, colors: list[int]) -> None:
        """Called once per refinement round before the signatures are taken"""

    @abstractmethod
    def signature(self, v: int, colors: list[int]) -> tuple:
        pass

    @abstractmethod
    def isolated(self, c: int) -> bool:
        """True when nothing outside component c refers to it and it refers to nothing"""

    @abstractmethod
    def leaf_code(self, order: tuple[int, ...], rotations: tuple[int, ...]) -> tuple:
        pass

    # Helpers for leaf codes

    def new_positions(self, order: tuple[int, ...], rotations: tuple[int, ...]) -> list[tuple[int, int]]:
        """Flat vertex -> (new component index, new position)"""
        new_index = {c: i for i, c in enumerate(order)}
        mapping = []
        for v in range(self.n):
            c = self.owner[v]
            p = v - self.offsets[c]
            mapping.append((new_index[c], (p - rotations[c]) % self.sizes[c]))
        return mapping

    def vertex_at(self, c: int, new_position: int, rotations: tuple[int, ...]) -> int:
        return self.offsets[c] + (new_position + rotations[c]) % self.sizes[c]


def _refine(structure: ChainStructure, keys: list[tuple]) -> list[int]:
    colors = _rank(keys)
    classes = len(set(colors))
    rounds = 0
    while True:
        rounds += 1
        structure.prepare(colors)
        signatures = [structure.signature(v, colors) for v in range(structure.n)]
        refined = _rank(signatures)
        refined_classes = len(set(refined))
        colors = refined
        if refined_classes == classes:
            break
        classes = refined_classes
    logger.debug("Refinement stable after %d rounds with %d classes", rounds, classes)
    return colors


def _component_keys(structure: ChainStructure, colors: list[int]) -> tuple[list[tuple], list[list[int]]]:
    keys, candidates = [], []
    for c, (kind, size) in enumerate(zip(structure.kinds, structure.sizes)):
        base = structure.offsets[c]
        if kind is Kind.CYCLE:
            sequences = [tuple(colors[base + (r + i) % size] for i in range(size)) for r in range(size)]
            best = min(sequences)
            candidates.append([r for r, seq in enumerate(sequences) if seq == best])
        else:
            best = tuple(colors[base : base + size])
            candidates.append([0])
        keys.append((kind.value, size, best))
    return keys, candidates


def canonical_labeling(structure: ChainStructure) -> Labeling:
    base_keys = structure.initial_keys()
    best: list[Labeling] = []

    def search(individualized: dict[int, int], depth: int) -> None:
        keys = [base_keys[v] + (individualized.get(v, 0),) for v in range(structure.n)]
        colors = _refine(structure, keys)
        comp_keys, candidates = _component_keys(structure, colors)
        order = tuple(sorted(range(len(comp_keys)), key=lambda c: (comp_keys[c], c)))

        for i in range(len(order) - 1):
            a, b = order[i], order[i + 1]
            if comp_keys[a] != comp_keys[b]:
                continue
            group = [c for c in order if comp_keys[c] == comp_keys[a]]
            if all(structure.isolated(c) for c in group):
                # Interchangeable: every ordering yields the same code
                continue
            for c in group:
                marked = dict(individualized)
                for p in range(structure.sizes[c]):
                    marked[structure.offsets[c] + p] = depth + 1
                search(marked, depth + 1)
            return

        for c in order:
            if len(candidates[c]) > 1 and not structure.isolated(c):
                for r in candidates[c]:
                    marked = dict(individualized)
                    marked[structure.offsets[c] + r] = depth + 1
                    search(marked, depth + 1)
                return

        rotations = tuple(candidates[c][0] for c in range(len(candidates)))
        code = structure.leaf_code(order, rotations)
        if not best or code < best[0].code:
            best[:] = [Labeling(code, order, rotations)]

    search({}, 0)
    return best[0]


# Gauss diagrams ###################


class DiagramStructure(ChainStructure):
    def __init__(self, diagram: GaussDiagram, distinguished: frozenset[VertexRef] = frozenset()) -> None:
        super().__init__([c.kind for c in diagram.components], [c.size for c in diagram.components])
        self.diagram = diagram
        index = {c.name: i for i, c in enumerate(diagram.components)}
        self.index = index
        self.marked = [False] * self.n
        self.distinguished = [False] * self.n
        for m in diagram.marks:
            self.marked[self.flat_index(m)] = True
        for d in distinguished:
            self.distinguished[self.flat_index(d)] = True
        # out_interaction[v]: (sign, agent) of the edge leaving v
        self.out_interaction: list[tuple[int, int] | None] = [None] * self.n
        self.acts: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for i in diagram.interactions:
            tail = self.flat_index(diagram.tail_of(i.edge))
            head = self.succ[tail]
            agent = self.flat_index(i.agent)
            self.out_interaction[tail] = (i.sign.value, agent)
            self.acts[agent].append((i.sign.value, tail, head))
        self.touched = [False] * len(diagram.components)
        for i in diagram.interactions:
            self.touched[index[i.edge.component]] = True
            self.touched[index[i.agent.component]] = True

    def flat_index(self, vertex: VertexRef) -> int:
        return self.offsets[self.index[vertex.component]] + vertex.position

    def initial_keys(self) -> list[tuple]:
        keys = []
        for v in range(self.n):
            c = self.owner[v]
            position = v - self.offsets[c] if self.kinds[c] is Kind.PATH else -1
            keys.append((self.kinds[c].value, self.sizes[c], position, self.marked[v], self.distinguished[v]))
        return keys

    def signature(self, v: int, colors: list[int]) -> tuple:
        pred, succ = self.pred[v], self.succ[v]
        out_int = self.out_interaction[v]
        in_int = self.out_interaction[pred] if pred >= 0 else None
        return (
            colors[v],
            colors[pred] if pred >= 0 else -1,
            colors[succ] if succ >= 0 else -1,
            (out_int[0], colors[out_int[1]]) if out_int else (0, -1),
            (in_int[0], colors[in_int[1]]) if in_int else (0, -1),
            tuple(sorted((sign, colors[tail], colors[head]) for sign, tail, head in self.acts[v])),
        )

    def isolated(self, c: int) -> bool:
        return not self.touched[c]

    def leaf_code(self, order: tuple[int, ...], rotations: tuple[int, ...]) -> tuple:
        positions = self.new_positions(order, rotations)
        code = []
        for c in order:
            size = self.sizes[c]
            vertices = [self.vertex_at(c, p, rotations) for p in range(size)]
            edges = []
            for v in vertices[: size if self.kinds[c] is Kind.CYCLE else size - 1]:
                out_int = self.out_interaction[v]
                if out_int is None:
                    edges.append((0, -1, -1))
                else:
                    edges.append((out_int[0],) + positions[out_int[1]])
            code.append(
                (
                    self.kinds[c].value,
                    size,
                    tuple(int(self.marked[v]) for v in vertices),
                    tuple(int(self.distinguished[v]) for v in vertices),
                    tuple(edges),
                )
            )
        return tuple(code)


def encode_code(code: tuple) -> CanonicalCode:
    parts = []
    for kind, size, marks, distinguished, edges in code:
        letter = "C" if kind == Kind.CYCLE.value else "P"
        edge_text = ",".join("." if sign == 0 else f"{'+' if sign > 0 else '-'}{c}.{p}" for sign, c, p in edges)
        part = f"{letter}{size}:{''.join(map(str, marks))}:{edge_text}"
        if any(distinguished):
            part += ":" + "".join(map(str, distinguished))
        parts.append(part)
    return CanonicalCode(";".join(parts).encode())


@dataclass(frozen=True)
class CanonicalForm:
    diagram: GaussDiagram
    code: CanonicalCode
    relabel: dict[VertexRef, VertexRef]


def canonical_form(
    diagram: GaussDiagram, distinguished: frozenset[VertexRef] = frozenset(), rename: bool = True
) -> CanonicalForm:
    """
    Canonical diagram, code and the map from the input's vertices to the canonical diagram's.

    With rename=True components are called c0, c1, ... in canonical order; otherwise their
    original names are kept (only order and rotation change).
    """
    require_valid(diagram)
    structure = DiagramStructure(diagram, distinguished)
    labeling = canonical_labeling(structure)
    old = diagram.components
    new_components = []
    names = {}
    for i, c in enumerate(labeling.order):
        name = f"c{i}" if rename else old[c].name
        names[old[c].name] = (name, labeling.rotations[c], old[c])
        new_components.append(Component(name, old[c].kind, old[c].size))

    def move(v: VertexRef) -> VertexRef:
        name, rotation, comp = names[v.component]
        return VertexRef(name, (v.position - rotation) % comp.size)

    relabel = {v: move(v) for v in diagram.vertices()}
    interactions = []
    for i in diagram.interactions:
        tail = move(diagram.tail_of(i.edge))
        interactions.append(Interaction(EdgeRef(tail.component, tail.position), move(i.agent), i.sign))
    canonical = GaussDiagram(tuple(new_components), tuple(interactions), frozenset(move(m) for m in diagram.marks))
    return CanonicalForm(canonical, encode_code(labeling.code), relabel)


def canonicalize(diagram: GaussDiagram) -> tuple[GaussDiagram, CanonicalCode]:
    form = canonical_form(diagram)
    return form.diagram, form.code


def canonical_code(diagram: GaussDiagram) -> CanonicalCode:
    return canonical_form(diagram).code


# Underlying graph ###################


def _pattern(component: Component, flags: list[bool]) -> tuple:
    bits = tuple(int(f) for f in flags)
    if component.kind is Kind.CYCLE:
        bits = min(bits[r:] + bits[:r] for r in range(component.size))
    return (component.kind.keyword, component.size, bits)


@dataclass(frozen=True)
class UnderlyingGraph:
    """(G, S) in canonical form, with S read both as support-or-marks and as marks only"""

    components: tuple[tuple[str, int], ...]
    agent_pattern: tuple[tuple, ...]
    mark_pattern: tuple[tuple, ...]

    @property
    def key(self) -> tuple:
        """The part of (G, S) preserved by Reidemeister moves"""
        return (self.components, self.mark_pattern)


def underlying_graph(diagram: GaussDiagram) -> UnderlyingGraph:
    require_valid(diagram)
    agents = diagram.agents()
    components = tuple(sorted((c.kind.keyword, c.size) for c in diagram.components))
    agent_pattern, mark_pattern = [], []
    for c in diagram.components:
        vertices = [VertexRef(c.name, p) for p in range(c.size)]
        agent_pattern.append(_pattern(c, [v in agents for v in vertices]))
        mark_pattern.append(_pattern(c, [v in diagram.marks for v in vertices]))
    return UnderlyingGraph(components, tuple(sorted(agent_pattern)), tuple(sorted(mark_pattern)))
