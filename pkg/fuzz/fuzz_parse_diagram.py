#!/usr/bin/env python3
"""
Atheris harness for the diagram parser.

Invariants:
- parse_diagram either returns a diagram or raises ParseError / SemanticError
- for small parsed diagrams, serialize(parse(serialize(M))) == serialize(M) and the canonical
  code survives the round trip

Run with `python fuzz/fuzz_parse_diagram.py -runs=1000000`; requires the `fuzz` extra.
"""

import sys

import atheris

with atheris.instrument_imports(include=["foam_io", "gauss_diagram"]):
    from foam_io.diagram_format import ParseError, SemanticError, parse_diagram, serialize
    from gauss_diagram.canonical import canonical_code

ROUND_TRIP_VERTICES = 64

SEEDS = [
    b"inca v1\ncomponent Q cycle 1\n",
    b"inca v1\ncomponent P path 2\ncomponent Q cycle 1\ninteract P[0] by Q.0 +\n",
    b"inca v1\ncomponent K cycle 4\ninteract K[2] by K.0 +\ninteract K[0] by K.2 -\nagent K.1\n",
]


def _structured(fdp: atheris.FuzzedDataProvider) -> bytes:
    """Grammar-shaped input with random names, sizes and references"""
    names = ["P", "Q", "R"]
    lines = ["inca v1"]
    for name in names[: fdp.ConsumeIntInRange(0, 3)]:
        lines.append(f"component {name} {fdp.PickValueInList(['cycle', 'path'])} {fdp.ConsumeIntInRange(0, 6)}")
    for _ in range(fdp.ConsumeIntInRange(0, 6)):
        edge = f"{fdp.PickValueInList(names)}[{fdp.ConsumeIntInRange(0, 6)}]"
        agent = f"{fdp.PickValueInList(names)}.{fdp.ConsumeIntInRange(0, 6)}"
        lines.append(f"interact {edge} by {agent} {fdp.PickValueInList(['+', '-'])}")
    if fdp.ConsumeBool():
        lines.append(f"agent {fdp.PickValueInList(names)}.{fdp.ConsumeIntInRange(0, 6)}")
    return ("\n".join(lines) + "\n").encode()


def test_one_input(data: bytes) -> None:
    fdp = atheris.FuzzedDataProvider(data)
    text = _structured(fdp) if fdp.ConsumeBool() else fdp.ConsumeBytes(fdp.remaining_bytes())
    try:
        diagram = parse_diagram(text)
    except (ParseError, SemanticError):
        return
    if diagram.n_vertices > ROUND_TRIP_VERTICES:
        return
    document = serialize(diagram)
    again = parse_diagram(document)
    if serialize(again) != document:
        raise AssertionError(f"serialization does not converge for {text!r}")
    if canonical_code(again) != canonical_code(diagram):
        raise AssertionError(f"canonical code changed by the round trip of {text!r}")


def main() -> None:
    for seed in SEEDS:
        parse_diagram(seed)
    atheris.Setup(sys.argv, test_one_input)
    atheris.Fuzz()


if __name__ == "__main__":
    main()
