"""
The `inca v1` diagram document.

    inca v1
    component <name> (cycle|path) <n>
    interact <comp>[<i>] by <comp>.<j> (+|-)
    agent <comp>.<j>

Tokens are whitespace separated and `#` starts a comment running to the end of the line.
Syntax errors carry the line and column of the offending token; documents that parse but
describe an invalid diagram raise SemanticError with the line of the first violation.
"""

import logging
import re
from dataclasses import dataclass

from gauss_diagram.canonical import canonical_form
from gauss_diagram.classes import (
    Component,
    EdgeRef,
    GaussDiagram,
    IncaError,
    Interaction,
    Kind,
    Sign,
    VertexRef,
    Violation,
    validate,
)

logger = logging.getLogger(__name__)

HEADER = ("inca", "v1")
NAME = r"[A-Za-z_][A-Za-z0-9_]*"
NUMBER = r"[0-9]{1,9}"
EDGE_TOKEN = re.compile(rf"({NAME})\[({NUMBER})\]\Z")
VERTEX_TOKEN = re.compile(rf"({NAME})\.({NUMBER})\Z")
NAME_TOKEN = re.compile(rf"{NAME}\Z")
NUMBER_TOKEN = re.compile(rf"{NUMBER}\Z")
TOKEN = re.compile(r"\S+")


class ParseError(IncaError):
    def __init__(self, message: str, line: int, column: int) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SemanticError(IncaError):
    def __init__(self, violations: list[Violation], line: int | None = None) -> None:
        self.violations = violations
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + "; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[list[Token]]:
    """Non-empty lines as token lists, comments stripped; columns are 1-based"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = [Token(m.group(), number, m.start() + 1) for m in TOKEN.finditer(content)]
        if tokens:
            lines.append(tokens)
    return lines


def decode(text: str | bytes) -> str:
    if isinstance(text, str):
        return text
    try:
        return text.decode("utf-8")
    except UnicodeDecodeError as e:
        line = text[: e.start].count(b"\n") + 1
        column = e.start - (text.rfind(b"\n", 0, e.start) + 1) + 1
        raise ParseError("invalid UTF-8", line, column) from None


def expect_arity(tokens: list[Token], arity: int, usage: str) -> None:
    if len(tokens) > arity:
        extra = tokens[arity]
        raise ParseError(f"unexpected token {extra.text!r}; usage: {usage}", extra.line, extra.column)
    if len(tokens) < arity:
        last = tokens[-1]
        raise ParseError(f"missing operand; usage: {usage}", last.line, last.column + len(last.text))


def expect_header(lines: list[list[Token]], tag: str, version: str) -> list[list[Token]]:
    if not lines:
        raise ParseError(f"empty document, expected header '{tag} {version}'", 1, 1)
    header = lines[0]
    if tuple(t.text for t in header) != (tag, version):
        raise ParseError(f"expected header '{tag} {version}'", header[0].line, header[0].column)
    return lines[1:]


def _match(pattern: re.Pattern, token: Token, what: str) -> re.Match:
    match = pattern.match(token.text)
    if match is None:
        raise ParseError(f"expected {what}, got {token.text!r}", token.line, token.column)
    return match


def parse_diagram(text: str | bytes) -> GaussDiagram:
    lines = expect_header(tokenize(decode(text)), *HEADER)

    components: list[Component] = []
    interactions: list[Interaction] = []
    marks: list[VertexRef] = []
    where: dict[object, int] = {}  # declaration -> line
    duplicates: list[tuple[int, Violation]] = []

    for tokens in lines:
        keyword = tokens[0]
        line = keyword.line
        match keyword.text:
            case "component":
                expect_arity(tokens, 4, "component <name> (cycle|path) <n>")
                name = _match(NAME_TOKEN, tokens[1], "a component name").group()
                kind_token = tokens[2]
                if kind_token.text not in ("cycle", "path"):
                    raise ParseError(f"expected cycle or path, got {kind_token.text!r}", line, kind_token.column)
                size = int(_match(NUMBER_TOKEN, tokens[3], "a size").group())
                if any(c.name == name for c in components):
                    duplicates.append((line, Violation(f"line {line}", f"duplicate component {name}")))
                component = Component(name, Kind.CYCLE if kind_token.text == "cycle" else Kind.PATH, size)
                components.append(component)
                where.setdefault(("component", name), line)
            case "interact":
                expect_arity(tokens, 5, "interact <comp>[<i>] by <comp>.<j> (+|-)")
                edge_match = _match(EDGE_TOKEN, tokens[1], "an edge like P[0]")
                if tokens[2].text != "by":
                    raise ParseError(f"expected 'by', got {tokens[2].text!r}", line, tokens[2].column)
                agent_match = _match(VERTEX_TOKEN, tokens[3], "a vertex like Q.0")
                if tokens[4].text not in ("+", "-"):
                    raise ParseError(f"expected + or -, got {tokens[4].text!r}", line, tokens[4].column)
                edge = EdgeRef(edge_match.group(1), int(edge_match.group(2)))
                if ("edge", edge) in where:
                    duplicates.append((line, Violation(f"line {line}", f"second interaction on edge {edge}")))
                    continue
                interaction = Interaction(
                    edge, VertexRef(agent_match.group(1), int(agent_match.group(2))), Sign.from_symbol(tokens[4].text)
                )
                interactions.append(interaction)
                where[("edge", edge)] = line
                where.setdefault(("vertex", interaction.agent), line)
            case "agent":
                expect_arity(tokens, 2, "agent <comp>.<j>")
                vertex_match = _match(VERTEX_TOKEN, tokens[1], "a vertex like Q.0")
                vertex = VertexRef(vertex_match.group(1), int(vertex_match.group(2)))
                marks.append(vertex)
                where.setdefault(("vertex", vertex), line)
            case _:
                raise ParseError(f"unknown keyword {keyword.text!r}", line, keyword.column)

    if duplicates:
        raise SemanticError([v for _, v in duplicates], duplicates[0][0])

    diagram = GaussDiagram(tuple(components), tuple(interactions), frozenset(marks))
    violations = validate(diagram)
    if violations:
        lines_of = [_violation_line(v, diagram, where) for v in violations]
        located = [
            Violation(f"line {n}", str(v)) if n is not None else v for v, n in zip(violations, lines_of)
        ]
        known = [n for n in lines_of if n is not None]
        raise SemanticError(located, min(known) if known else None)
    logger.debug("Parsed %d components, %d interactions", len(components), len(interactions))
    return diagram


def _violation_line(violation: Violation, diagram: GaussDiagram, where: dict) -> int | None:
    """Line of the declaration a validation violation refers to"""
    kind, _, ref = violation.reference.partition(" ")
    match kind:
        case "component":
            return where.get(("component", ref.strip("'")))
        case "edge":
            for i in diagram.interactions:
                if str(i.edge) == ref:
                    return where.get(("edge", i.edge))
        case "agent" | "mark":
            for v in list(diagram.marks) + [i.agent for i in diagram.interactions]:
                if str(v) == ref:
                    return where.get(("vertex", v))
    return None


def serialize(diagram: GaussDiagram) -> str:
    """Canonical component order and rotation, original names"""
    form = canonical_form(diagram, rename=False)
    canonical = form.diagram
    lines = [" ".join(HEADER)]
    for c in canonical.components:
        lines.append(f"component {c.name} {c.kind.keyword} {c.size}")
    order = {c.name: i for i, c in enumerate(canonical.components)}
    for i in sorted(canonical.interactions, key=lambda i: (order[i.edge.component], i.edge.tail)):
        lines.append(f"interact {i.edge} by {i.agent} {i.sign.symbol}")
    for mark in sorted(canonical.marks, key=lambda v: (order[v.component], v.position)):
        lines.append(f"agent {mark}")
    return "\n".join(lines) + "\n"
