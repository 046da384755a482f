"""Underlying w-tangle: the quotient of a diagram by false (de)stabilization"""

import logging
from dataclasses import dataclass

from gauss_diagram.canonical import canonical_form
from gauss_diagram.classes import GaussDiagram, Kind, Sign, require_valid
from gauss_diagram.moves import false_destabilize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WCode:
    """Per component, in canonical order: its kind and the (agent, sign) labels of its edges"""

    components: tuple[tuple[Kind, tuple[tuple[str, Sign], ...]], ...]

    def __str__(self) -> str:
        parts = []
        for kind, labels in self.components:
            text = " ".join(f"{agent}{sign.symbol}" for agent, sign in labels)
            parts.append(f"{kind.keyword}({text})")
        return " ".join(parts)


def false_normal_form(diagram: GaussDiagram) -> GaussDiagram:
    """Contracts bare non-loop edges until none is left"""
    require_valid(diagram)
    while True:
        contractible = [e for e in diagram.bare_edges() if diagram.tail_of(e) != diagram.head_of(e)]
        if not contractible:
            return diagram
        diagram = false_destabilize(diagram, contractible[0])


def w_code(diagram: GaussDiagram) -> WCode:
    # marks of inert vertices play no part in the w-tangle
    normal = canonical_form(false_normal_form(diagram).evolve(marks=frozenset())).diagram
    components = []
    for c in normal.components:
        labels = []
        for e in normal.edges():
            if e.component != c.name:
                continue
            interaction = normal.interaction_on(e)
            if interaction is not None:
                labels.append((str(interaction.agent), interaction.sign))
        components.append((c.kind, tuple(labels)))
    logger.debug("w-code %s", components)
    return WCode(tuple(components))
