"""
Linking graphs: per-vertex integer vectors counting signed actions on each component.

Canonical codes of every variant are taken on the zero-suppressed label sequence of each
component (zero vectors dropped, one kept for an all-zero component), so a vector moving to an
adjacent vertex leaves the code unchanged.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import pandas as pd

from gauss_diagram.canonical import CanonicalCode, ChainStructure, canonical_labeling
from gauss_diagram.classes import Component, GaussDiagram, Kind, VertexRef, require_valid

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


class LinkingVariant(Enum):
    FULL = "full"
    UNFRAMED = "unframed"
    REDUCED = "reduced"
    REDUCED_UNFRAMED = "reduced-unframed"

    @property
    def framed(self) -> bool:
        return self in (LinkingVariant.FULL, LinkingVariant.REDUCED)

    @property
    def reduced(self) -> bool:
        return self in (LinkingVariant.REDUCED, LinkingVariant.REDUCED_UNFRAMED)


class _LinkingStructure(ChainStructure):
    def __init__(self, kinds: list[Kind], labels: list[list[Vector]]) -> None:
        super().__init__(kinds, [len(chain) for chain in labels])
        self.labels = [label for chain in labels for label in chain]
        self.touched = [any(any(label) for label in chain) for chain in labels]
        for label in self.labels:
            for j, x in enumerate(label):
                if x:
                    self.touched[j] = True
        self.component_colors: list[tuple] = []

    def prepare(self, colors: list[int]) -> None:
        self.component_colors = [
            tuple(sorted(colors[self.offsets[c] : self.offsets[c] + self.sizes[c]])) for c in range(len(self.sizes))
        ]

    def initial_keys(self) -> list[tuple]:
        keys = []
        for v in range(self.n):
            c = self.owner[v]
            position = v - self.offsets[c] if self.kinds[c] is Kind.PATH else -1
            keys.append((self.kinds[c].value, self.sizes[c], position, tuple(sorted(x for x in self.labels[v] if x))))
        return keys

    def signature(self, v: int, colors: list[int]) -> tuple:
        pred, succ = self.pred[v], self.succ[v]
        entries = tuple(sorted((self.component_colors[j], x) for j, x in enumerate(self.labels[v]) if x))
        return (colors[v], colors[pred] if pred >= 0 else -1, colors[succ] if succ >= 0 else -1, entries)

    def isolated(self, c: int) -> bool:
        return not self.touched[c]

    def leaf_code(self, order: tuple[int, ...], rotations: tuple[int, ...]) -> tuple:
        new_index = {c: i for i, c in enumerate(order)}
        code = []
        for c in order:
            vertices = [self.vertex_at(c, p, rotations) for p in range(self.sizes[c])]
            labels = tuple(tuple(sorted((new_index[j], x) for j, x in enumerate(self.labels[v]) if x)) for v in vertices)
            code.append((self.kinds[c].value, self.sizes[c], labels))
        return tuple(code)


def _encode(code: tuple) -> CanonicalCode:
    parts = []
    for kind, size, labels in code:
        letter = "C" if kind == Kind.CYCLE.value else "P"
        text = ",".join("[" + " ".join(f"{j}:{x}" for j, x in label) + "]" for label in labels)
        parts.append(f"{letter}{size}:{text}")
    return CanonicalCode(";".join(parts).encode())


@dataclass(frozen=True)
class LinkingGraph:
    variant: LinkingVariant
    components: tuple[Component, ...]
    chains: tuple[tuple[VertexRef, ...], ...]
    vectors: dict[VertexRef, Vector] = field(compare=False)

    def vector(self, vertex: VertexRef) -> Vector:
        return self.vectors[vertex]

    def nonzero_agents(self) -> list[VertexRef]:
        return [v for chain in self.chains for v in chain if any(self.vectors[v])]

    def is_zero(self) -> bool:
        return not self.nonzero_agents()

    @cached_property
    def code(self) -> CanonicalCode:
        labels = []
        for chain in self.chains:
            nonzero = [self.vectors[v] for v in chain if any(self.vectors[v])]
            labels.append(nonzero or [self.vectors[chain[0]]])
        structure = _LinkingStructure([c.kind for c in self.components], labels)
        return _encode(canonical_labeling(structure).code)

    def to_frame(self) -> pd.DataFrame:
        """Rows are the kept vertices, columns the components"""
        rows = [v for chain in self.chains for v in chain]
        return pd.DataFrame(
            [list(self.vectors[v]) for v in rows],
            index=pd.Index([str(v) for v in rows], name="vertex"),
            columns=[c.name for c in self.components],
        )


def linking_vectors(diagram: GaussDiagram, framed: bool = True) -> dict[VertexRef, Vector]:
    index = {c.name: j for j, c in enumerate(diagram.components)}
    vectors = {v: [0] * len(diagram.components) for v in diagram.vertices()}
    for i in diagram.interactions:
        vectors[i.agent][index[i.edge.component]] += i.sign.value
    if not framed:
        for v, vector in vectors.items():
            vector[index[v.component]] = 0
    return {v: tuple(vector) for v, vector in vectors.items()}


def linking_graph(diagram: GaussDiagram, variant: LinkingVariant = LinkingVariant.FULL) -> LinkingGraph:
    require_valid(diagram)
    vectors = linking_vectors(diagram, variant.framed)
    chains = []
    components = []
    for c in diagram.components:
        chain = tuple(VertexRef(c.name, p) for p in range(c.size))
        if variant.reduced:
            # zero-vector vertices are contracted; an all-zero component keeps its first vertex
            chain = tuple(v for v in chain if any(vectors[v])) or chain[:1]
        chains.append(chain)
        components.append(Component(c.name, c.kind, len(chain)))
    kept = {v for chain in chains for v in chain}
    return LinkingGraph(variant, tuple(components), tuple(chains), {v: x for v, x in vectors.items() if v in kept})


def linking_code(diagram: GaussDiagram, variant: LinkingVariant = LinkingVariant.REDUCED_UNFRAMED) -> CanonicalCode:
    return linking_graph(diagram, variant).code
