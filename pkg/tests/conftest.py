import pytest

from foam_io.corpus import load_example
from foam_io.diagram_format import parse_diagram
from gauss_diagram.classes import GaussDiagram


@pytest.fixture
def single_interaction() -> GaussDiagram:
    return load_example("single_interaction")


@pytest.fixture
def capacity_triangle() -> GaussDiagram:
    return load_example("capacity_triangle")


@pytest.fixture
def kishino() -> GaussDiagram:
    return load_example("kishino_analogue")


@pytest.fixture
def trivial_loop() -> GaussDiagram:
    return parse_diagram("inca v1\ncomponent Q cycle 1\n")


@pytest.fixture
def path_and_triangle() -> GaussDiagram:
    """A bare PATH(4) next to a bare CYCLE(3)"""
    return parse_diagram("inca v1\ncomponent P path 4\ncomponent T cycle 3\n")
