import logging

from gauss_diagram.classes import GaussDiagram, Kind, require_valid

logger = logging.getLogger(__name__)


def _node(vertex) -> str:
    return f'"{vertex}"'


def export_dot(diagram: GaussDiagram) -> str:
    """
    Component chains as solid edges, one cluster per component. Each interaction is a dashed
    arrow from its agent to the tail of the edge it acts on, labelled with the sign and the edge.
    """
    require_valid(diagram)
    lines = ["digraph gauss_diagram {", "  rankdir=LR;"]
    for c in diagram.components:
        lines.append(f'  subgraph "cluster_{c.name}" {{')
        lines.append(f'    label="{c.name} ({c.kind.keyword})";')
        for p in range(c.size):
            shape = "doublecircle" if any(v.position == p and v.component == c.name for v in diagram.marks) else "circle"
            lines.append(f'    "{c.name}.{p}" [label="{p}", shape={shape}];')
        for tail in range(c.n_edges):
            head = c.head_position(tail)
            style = "" if c.kind is Kind.PATH or head != 0 else ' [constraint=false]'
            lines.append(f'    "{c.name}.{tail}" -> "{c.name}.{head}"{style};')
        lines.append("  }")
    for i in diagram.interactions:
        lines.append(
            f'  {_node(i.agent)} -> {_node(diagram.tail_of(i.edge))} '
            f'[style=dashed, label="{i.sign.symbol} {i.edge}", constraint=false];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
