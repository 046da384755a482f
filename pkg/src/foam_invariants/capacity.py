"""
Shannon-capacity style counts of distinguishable coloured messages.

Messages of length k are k-tuples of colours. Two messages are confusable when one automorphism
carries the first to the second letter by letter, a letter being allowed to land instead on a
colour sharing a realized interaction triple with its image (when triples are enabled).
"""

import logging
from dataclasses import dataclass, field
from itertools import product

import networkx as nx
import numpy as np
import pandas as pd

from foam_invariants.colorings import realized_triples
from foam_invariants.quandles import MultiQuandle, automorphisms
from gauss_diagram.classes import GaussDiagram, ResourceLimitError

logger = logging.getLogger(__name__)

MESSAGE_LIMIT = 512
REDUCED_LIMIT = 512
UNREDUCED_LIMIT = 64
PRODUCT_LIMIT = 4096


@dataclass(frozen=True)
class MessagePolicy:
    use_automorphisms: bool = True
    use_triples: bool = False

    @classmethod
    def from_name(cls, name: str) -> "MessagePolicy":
        match name:
            case "aut":
                return cls(True, False)
            case "aut+triples":
                return cls(True, True)
            case "triples":
                return cls(False, True)
            case "none":
                return cls(False, False)
            case _:
                raise ValueError(f"Unknown message policy {name!r}")

    @property
    def name(self) -> str:
        parts = [p for p, on in (("aut", self.use_automorphisms), ("triples", self.use_triples)) if on]
        return "+".join(parts) or "none"


def message_index(message: tuple[int, ...], q: int) -> int:
    index = 0
    for letter in message:
        index = index * q + letter
    return index


def message_graph(
    diagram: GaussDiagram,
    quandle: MultiQuandle,
    k: int,
    policy: MessagePolicy = MessagePolicy(),
    limit: int = MESSAGE_LIMIT,
) -> nx.Graph:
    """Confusability graph on the q^k messages; node i carries its tuple as attribute "message" """
    q = quandle.size
    if k < 1:
        raise ValueError(f"Message length must be positive, got {k}")
    if q**k > limit:
        raise ResourceLimitError("message graph vertices", limit, q**k)
    if not (policy.use_automorphisms or policy.use_triples):
        logger.warning("Message policy %s confuses nothing; every message is distinguishable", policy.name)

    alphas = automorphisms(quandle) if policy.use_automorphisms else [tuple(range(q))]
    # near[y]: colours sharing a realized triple with y
    near = [{y} for y in range(q)]
    if policy.use_triples:
        for triple in realized_triples(diagram, quandle):
            for a in triple:
                near[a].update(triple)

    graph = nx.Graph()
    messages = list(product(range(q), repeat=k))
    graph.add_nodes_from((message_index(m, q), {"message": m}) for m in messages)
    for m in messages:
        source = message_index(m, q)
        for alpha in alphas:
            for target in product(*(sorted(near[alpha[letter]]) for letter in m)):
                other = message_index(target, q)
                if other != source:
                    graph.add_edge(source, other)
    logger.debug("Message graph k=%d: %d vertices, %d edges", k, graph.number_of_nodes(), graph.number_of_edges())
    return graph


# Independence number ###################


def _colour_order(candidates: int, adjacency: list[int]) -> tuple[list[int], list[int]]:
    """Greedy colouring of the candidate set; vertices in colour order with running colour bounds"""
    order, bounds = [], []
    remaining = candidates
    colour = 0
    while remaining:
        colour += 1
        available = remaining
        while available:
            v = (available & -available).bit_length() - 1
            available &= ~adjacency[v] & ~(1 << v)
            remaining &= ~(1 << v)
            order.append(v)
            bounds.append(colour)
    return order, bounds


def _max_clique(adjacency: list[int]) -> int:
    best = 0

    def expand(size: int, candidates: int) -> None:
        nonlocal best
        order, bounds = _colour_order(candidates, adjacency)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            narrowed = candidates & adjacency[v]
            if narrowed:
                expand(size + 1, narrowed)
            elif size + 1 > best:
                best = size + 1
            candidates &= ~(1 << v)

    expand(0, (1 << len(adjacency)) - 1)
    return best


def _component_independence(graph: nx.Graph) -> int:
    n = graph.number_of_nodes()
    if graph.number_of_edges() == n * (n - 1) // 2:
        return 1
    nodes = list(graph.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    adjacency = [0] * n
    # cliques of the complement are independent sets
    for u, v in nx.complement(graph).edges:
        adjacency[index[u]] |= 1 << index[v]
        adjacency[index[v]] |= 1 << index[u]
    return _max_clique(adjacency)


def independence_number(graph: nx.Graph, limit: int | None = None, reduce: bool = True) -> int:
    """Exact maximum independent set size, summed over connected components when `reduce`"""
    n = graph.number_of_nodes()
    limit = limit if limit is not None else (REDUCED_LIMIT if reduce else UNREDUCED_LIMIT)
    if n > limit:
        raise ResourceLimitError("independence number vertices", limit, n)
    if n == 0:
        return 0
    if not reduce:
        return _component_independence(graph)
    return sum(_component_independence(graph.subgraph(c)) for c in nx.connected_components(graph))


def strong_product(first: nx.Graph, second: nx.Graph, limit: int = PRODUCT_LIMIT) -> nx.Graph:
    """Strong product relabelled to 0..N-1; node attribute "pair" holds the original pair"""
    size = first.number_of_nodes() * second.number_of_nodes()
    if size > limit:
        raise ResourceLimitError("strong product vertices", limit, size)
    return nx.convert_node_labels_to_integers(nx.strong_product(first, second), ordering="sorted", label_attribute="pair")


def clique_cover_bound(graph: nx.Graph) -> int:
    """Greedy colouring of the complement: an upper bound on the independence number"""
    if graph.number_of_nodes() == 0:
        return 0
    colouring = nx.greedy_color(nx.complement(graph), strategy="largest_first")
    return max(colouring.values()) + 1


# Reports ###################


@dataclass(frozen=True)
class CapReport:
    quandle: str
    policy: MessagePolicy
    caps: tuple[int, ...]
    upper_bound: int
    lower_bounds_only: bool = field(default=True)

    @property
    def kmax(self) -> int:
        return len(self.caps)

    @property
    def lower_bound(self) -> float:
        return max(cap ** (1 / k) for k, cap in enumerate(self.caps, start=1))

    def to_frame(self) -> pd.DataFrame:
        k = np.arange(1, self.kmax + 1)
        caps = np.array(self.caps, dtype=float)
        return pd.DataFrame({"k": k, "cap": self.caps, "root": caps ** (1 / k)}).set_index("k")

    def lines(self) -> list[str]:
        lines = [f"quandle: {self.quandle}", f"policy: {self.policy.name}"]
        lines += [f"cap_{k}: {cap}" for k, cap in enumerate(self.caps, start=1)]
        lines.append(f"lower_bound: {self.lower_bound:.6f}")
        lines.append(f"upper_bound: {self.upper_bound}")
        lines.append("certified: lower bounds only")
        return lines


def cap_report(
    diagram: GaussDiagram,
    quandle: MultiQuandle,
    kmax: int,
    policy: MessagePolicy = MessagePolicy(),
    limit: int = MESSAGE_LIMIT,
) -> CapReport:
    caps = []
    for k in range(1, kmax + 1):
        caps.append(independence_number(message_graph(diagram, quandle, k, policy, limit)))
        logger.info("Cap_%d = %d", k, caps[-1])
    return CapReport(quandle.name, policy, tuple(caps), quandle.size)
