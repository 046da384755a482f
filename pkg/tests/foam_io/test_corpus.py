import pytest

from foam_io.corpus import example_source, is_reconstructed, list_examples, list_quandles, load_corpus_quandle, load_example
from gauss_diagram.classes import validate

EXAMPLES = [
    "capacity_triangle",
    "kishino_analogue",
    "r2_after",
    "r2_before",
    "r3_after",
    "r3_before",
    "single_interaction",
]


def test_examples_are_listed():
    assert list_examples() == EXAMPLES
    assert list_quandles() == ["dihedral_plus_point"]


@pytest.mark.parametrize("name", EXAMPLES)
def test_examples_are_valid(name):
    assert validate(load_example(name)) == []


def test_reconstructed_entries_are_annotated():
    assert is_reconstructed("capacity_triangle")
    assert is_reconstructed("kishino_analogue")
    assert not is_reconstructed("single_interaction")


def test_unknown_names():
    with pytest.raises(KeyError):
        example_source("nope")
    with pytest.raises(KeyError):
        load_corpus_quandle("nope")


def test_quandle_name_follows_the_file():
    assert load_corpus_quandle("dihedral_plus_point").size == 4
