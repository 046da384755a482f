"""
The `quandle v1` document: a size line followed by one block per operation.

    quandle v1
    name dihedral-plus-point      # optional
    size 4
    op r inverse r
    row 0 2 1 0                   # row x lists x ▷ y for y = 0..size-1
    ...
"""

import logging
from pathlib import Path

import numpy as np

from foam_invariants.quandles import MultiQuandle, Operation, from_spec, require_quandle
from foam_io.diagram_format import NAME_TOKEN, NUMBER_TOKEN, ParseError, Token, decode, expect_arity, expect_header, tokenize

logger = logging.getLogger(__name__)

HEADER = ("quandle", "v1")


def _number(token: Token) -> int:
    if not NUMBER_TOKEN.match(token.text):
        raise ParseError(f"expected a number, got {token.text!r}", token.line, token.column)
    return int(token.text)


def parse_quandle(text: str | bytes, name: str = "quandle") -> MultiQuandle:
    lines = expect_header(tokenize(decode(text)), *HEADER)
    size = None
    ops: list[tuple[str, str, list[list[int]], Token]] = []
    for tokens in lines:
        keyword = tokens[0]
        match keyword.text:
            case "name":
                expect_arity(tokens, 2, "name <text>")
                name = tokens[1].text
            case "size":
                expect_arity(tokens, 2, "size <n>")
                if size is not None:
                    raise ParseError("size declared twice", keyword.line, keyword.column)
                size = _number(tokens[1])
                if size < 1:
                    raise ParseError("size must be positive", tokens[1].line, tokens[1].column)
            case "op":
                expect_arity(tokens, 4, "op <name> inverse <name>")
                if size is None:
                    raise ParseError("op before size", keyword.line, keyword.column)
                for token in (tokens[1], tokens[3]):
                    if not NAME_TOKEN.match(token.text):
                        raise ParseError(f"invalid operation name {token.text!r}", token.line, token.column)
                if tokens[2].text != "inverse":
                    raise ParseError(f"expected 'inverse', got {tokens[2].text!r}", tokens[2].line, tokens[2].column)
                ops.append((tokens[1].text, tokens[3].text, [], keyword))
            case "row":
                if not ops:
                    raise ParseError("row before op", keyword.line, keyword.column)
                expect_arity(tokens, size + 1, f"row followed by {size} colours")
                row = [_number(t) for t in tokens[1:]]
                for token, value in zip(tokens[1:], row):
                    if value >= size:
                        raise ParseError(f"colour {value} out of range 0..{size - 1}", token.line, token.column)
                rows = ops[-1][2]
                if len(rows) == size:
                    raise ParseError(f"operation {ops[-1][0]} already has {size} rows", keyword.line, keyword.column)
                rows.append(row)
            case _:
                raise ParseError(f"unknown keyword {keyword.text!r}", keyword.line, keyword.column)

    if size is None:
        raise ParseError("missing size line", 1, 1)
    if not ops:
        raise ParseError("no operations declared", 1, 1)
    for op_name, _, rows, token in ops:
        if len(rows) != size:
            raise ParseError(f"operation {op_name} has {len(rows)} rows, expected {size}", token.line, token.column)
    quandle = MultiQuandle(name, size, tuple(Operation(n, np.array(r), inv) for n, inv, r, _ in ops))
    logger.debug("Parsed quandle %s of size %d with %d operations", name, size, len(ops))
    return quandle


def serialize_quandle(quandle: MultiQuandle) -> str:
    lines = [" ".join(HEADER), f"name {quandle.name}", f"size {quandle.size}"]
    for op in quandle.ops:
        lines.append(f"op {op.name} inverse {op.inverse}")
        lines += ["row " + " ".join(str(int(v)) for v in row) for row in op.table]
    return "\n".join(lines) + "\n"


def load_quandle(spec: str) -> MultiQuandle:
    """Builtin spec string (trivial:3, dihedral:5, ...) or a path to a quandle document; validated"""
    path = Path(spec)
    if path.is_file():
        quandle = parse_quandle(path.read_bytes(), name=path.stem)
    else:
        quandle = from_spec(spec)
    return require_quandle(quandle)
