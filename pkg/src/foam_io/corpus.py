"""Named diagrams and quandles shipped with the package"""

import logging
from importlib.resources import files

from foam_invariants.quandles import MultiQuandle
from foam_io.diagram_format import parse_diagram
from foam_io.quandle_format import parse_quandle
from gauss_diagram.classes import GaussDiagram

logger = logging.getLogger(__name__)

CORPUS = files("foam_io") / "corpus"


def list_examples() -> list[str]:
    return sorted(p.name.removesuffix(".inca") for p in CORPUS.iterdir() if p.name.endswith(".inca"))


def list_quandles() -> list[str]:
    return sorted(p.name.removesuffix(".quandle") for p in CORPUS.iterdir() if p.name.endswith(".quandle"))


def example_source(name: str) -> str:
    resource = CORPUS / f"{name}.inca"
    if not resource.is_file():
        raise KeyError(f"No example named {name!r}; available: {', '.join(list_examples())}")
    return resource.read_text(encoding="utf-8")


def load_example(name: str) -> GaussDiagram:
    diagram = parse_diagram(example_source(name))
    logger.debug("Loaded example %s", name)
    return diagram


def load_corpus_quandle(name: str) -> MultiQuandle:
    resource = CORPUS / f"{name}.quandle"
    if not resource.is_file():
        raise KeyError(f"No quandle named {name!r}; available: {', '.join(list_quandles())}")
    return parse_quandle(resource.read_bytes(), name=name)


def is_reconstructed(name: str) -> bool:
    """Entries transcribed from figures are annotated `# source: figure (reconstructed)`"""
    return "source: figure" in example_source(name)
