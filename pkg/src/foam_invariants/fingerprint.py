"""
Aggregate invariant fingerprint used as the NO certificate of the search procedures.

Entry                       invariant under
component kinds             every move, false (de)stabilization included
underlying key              Reidemeister moves
reduced unframed linking    Reidemeister moves and (de)stabilization
colouring counts            Reidemeister moves and (de)stabilization (single involutory op quandles)
full linking                R2 and R3 only; recorded, never used as a certificate
"""

import logging
from dataclasses import dataclass
from typing import Sequence

from foam_invariants.colorings import count_colorings
from foam_invariants.linking import LinkingVariant, linking_code
from foam_invariants.quandles import MultiQuandle, dihedral, trivial
from gauss_diagram.canonical import CanonicalCode, underlying_graph
from gauss_diagram.classes import GaussDiagram, require_valid

logger = logging.getLogger(__name__)

DEFAULT_PANEL: tuple[MultiQuandle, ...] = (trivial(3), dihedral(3), dihedral(5), dihedral(7))


@dataclass(frozen=True)
class Fingerprint:
    component_kinds: tuple[str, ...]
    underlying: tuple
    linking: CanonicalCode
    full_linking: CanonicalCode
    colorings: tuple[tuple[str, int, bool], ...]  # (quandle, count, certifying)

    def certificate(self, other: "Fingerprint", stable: bool = False, use_false: bool = False) -> str | None:
        """Name of the first entry that differs and is invariant under the given move set"""
        if self.component_kinds != other.component_kinds:
            return f"component kinds {self.component_kinds} != {other.component_kinds}"
        if use_false:
            return None
        if not stable and self.underlying != other.underlying:
            return "underlying graph differs"
        if self.linking != other.linking:
            return f"reduced unframed linking {self.linking} != {other.linking}"
        for (name, count, certifying), (other_name, other_count, _) in zip(self.colorings, other.colorings):
            if certifying and name == other_name and count != other_count:
                return f"colourings over {name}: {count} != {other_count}"
        return None

    def as_dict(self) -> dict:
        return {
            "component_kinds": list(self.component_kinds),
            "underlying": repr(self.underlying),
            "linking": str(self.linking),
            "full_linking": str(self.full_linking),
            "colorings": {name: count for name, count, _ in self.colorings},
        }


def fingerprint(diagram: GaussDiagram, panel: Sequence[MultiQuandle] = DEFAULT_PANEL) -> Fingerprint:
    require_valid(diagram)
    kinds = tuple(sorted(c.kind.keyword for c in diagram.components))
    colorings = tuple((q.name, count_colorings(diagram, q), q.single_involutory) for q in panel)
    return Fingerprint(
        kinds,
        underlying_graph(diagram).key,
        linking_code(diagram, LinkingVariant.REDUCED_UNFRAMED),
        linking_code(diagram, LinkingVariant.FULL),
        colorings,
    )
