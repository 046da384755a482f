import pytest

from gauss_diagram.classes import (
    Component,
    EdgeRef,
    GaussDiagram,
    Interaction,
    InvalidDiagramError,
    Kind,
    Sign,
    VertexRef,
    require_valid,
    support,
    validate,
)


@pytest.fixture
def two_components() -> GaussDiagram:
    return GaussDiagram(
        (Component("P", Kind.PATH, 3), Component("Q", Kind.CYCLE, 2)),
        (
            Interaction(EdgeRef("P", 0), VertexRef("Q", 0), Sign.POS),
            Interaction(EdgeRef("Q", 1), VertexRef("P", 2), Sign.NEG),
        ),
        frozenset({VertexRef("Q", 1)}),
    )


class TestBasicTypes:
    def test_sign_negation_is_an_involution(self):
        for sign in Sign:
            assert -(-sign) is sign
            assert -sign is not sign

    @pytest.mark.parametrize("symbol, sign", [("+", Sign.POS), ("-", Sign.NEG)])
    def test_sign_symbols(self, symbol, sign):
        assert Sign.from_symbol(symbol) is sign
        assert sign.symbol == symbol

    @pytest.mark.parametrize(
        "kind, size, edges", [(Kind.PATH, 1, 0), (Kind.PATH, 4, 3), (Kind.CYCLE, 1, 1), (Kind.CYCLE, 4, 4)]
    )
    def test_edge_counts(self, kind, size, edges):
        assert Component("A", kind, size).n_edges == edges

    def test_cycle_heads_wrap(self):
        assert Component("A", Kind.CYCLE, 3).head_position(2) == 0
        assert Component("A", Kind.CYCLE, 1).head_position(0) == 0

    def test_references_print_like_the_document_format(self):
        assert str(VertexRef("Q", 0)) == "Q.0"
        assert str(EdgeRef("P", 3)) == "P[3]"


class TestGaussDiagram:
    def test_structure(self, two_components):
        d = two_components
        assert d.n_vertices == 5
        assert d.n_edges == 4
        assert d.tail_of(EdgeRef("Q", 1)) == VertexRef("Q", 1)
        assert d.head_of(EdgeRef("Q", 1)) == VertexRef("Q", 0)
        assert d.out_edge(VertexRef("P", 2)) is None
        assert d.in_edge(VertexRef("P", 0)) is None

    def test_support_and_agents(self, two_components):
        assert support(two_components) == {VertexRef("Q", 0), VertexRef("P", 2)}
        assert two_components.agents() == {VertexRef("Q", 0), VertexRef("P", 2), VertexRef("Q", 1)}
        assert two_components.is_inert(VertexRef("P", 1))
        assert not two_components.is_inert(VertexRef("Q", 1))

    def test_bare_edges(self, two_components):
        assert two_components.bare_edges() == [EdgeRef("P", 1), EdgeRef("Q", 0)]

    def test_restrict_leaves_input_untouched(self, two_components):
        restricted = two_components.restrict({VertexRef("Q", 0)})
        assert len(restricted.interactions) == 1
        assert restricted.marks == frozenset()
        assert len(two_components.interactions) == 2

    def test_trivial(self, two_components):
        trivial = two_components.trivial()
        assert trivial.components == two_components.components
        assert not trivial.interactions and not trivial.marks


class TestValidate:
    def test_valid_diagram_has_no_violations(self, two_components):
        assert validate(two_components) == []
        assert require_valid(two_components) is two_components

    def test_edge_out_of_range(self):
        d = GaussDiagram(
            (Component("P", Kind.PATH, 2), Component("Q", Kind.CYCLE, 1)),
            (Interaction(EdgeRef("P", 3), VertexRef("Q", 0), Sign.POS),),
        )
        (violation,) = validate(d)
        assert violation.reference == "edge P[3]"

    def test_unknown_component(self):
        d = GaussDiagram((Component("P", Kind.PATH, 2),), (Interaction(EdgeRef("P", 0), VertexRef("X", 0), Sign.POS),))
        assert [v.reference for v in validate(d)] == ["agent X.0"]

    def test_duplicate_interaction_on_an_edge(self):
        d = GaussDiagram(
            (Component("P", Kind.PATH, 2), Component("Q", Kind.CYCLE, 1)),
            (
                Interaction(EdgeRef("P", 0), VertexRef("Q", 0), Sign.POS),
                Interaction(EdgeRef("P", 0), VertexRef("P", 1), Sign.NEG),
            ),
        )
        assert any("more than one interaction" in v.message for v in validate(d))

    def test_mark_out_of_range(self):
        d = GaussDiagram((Component("P", Kind.PATH, 2),), marks=frozenset({VertexRef("P", 2)}))
        assert [v.reference for v in validate(d)] == ["mark P.2"]

    def test_nonpositive_size_and_duplicate_names(self):
        d = GaussDiagram((Component("P", Kind.PATH, 0), Component("Q", Kind.CYCLE, 1), Component("Q", Kind.PATH, 1)))
        references = [v.reference for v in validate(d)]
        assert "component P" in references
        assert "component Q" in references

    def test_require_valid_raises_with_the_violations(self):
        d = GaussDiagram((Component("P", Kind.PATH, 2),), marks=frozenset({VertexRef("P", 5)}))
        with pytest.raises(InvalidDiagramError) as info:
            require_valid(d)
        assert len(info.value.violations) == 1
