from foam_invariants.wtangle import false_normal_form, w_code
from foam_io.diagram_format import parse_diagram
from foam_io.generator import random_small_diagram
from gauss_diagram.classes import Kind
from gauss_diagram.moves import FALSE_STABILIZATION, STABILIZATION, apply_move, enumerate_moves


class TestFalseNormalForm:
    def test_bare_components_collapse(self, path_and_triangle):
        normal = false_normal_form(path_and_triangle)
        assert [c.size for c in normal.components] == [1, 1]
        assert normal.n_edges == 1

    def test_acted_edges_survive(self, kishino):
        normal = false_normal_form(kishino)
        assert normal.component("K").size == 2
        assert len(normal.interactions) == 2
        assert not normal.bare_edges()


class TestWCode:
    def test_kishino_analogue(self, kishino):
        ((kind, labels),) = w_code(kishino).components
        assert kind is Kind.CYCLE
        assert sorted(sign.symbol for _, sign in labels) == ["+", "-"]
        assert str(w_code(kishino)).startswith("cycle(")

    def test_marks_are_ignored(self, single_interaction):
        marked = single_interaction.evolve(marks=frozenset(single_interaction.vertices()))
        assert w_code(marked) == w_code(single_interaction)

    def test_renaming(self, single_interaction):
        renamed = parse_diagram("inca v1\ncomponent L cycle 1\ncomponent S path 2\ninteract S[0] by L.0 +\n")
        assert w_code(renamed) == w_code(single_interaction)

    def test_signs_matter(self, single_interaction):
        flipped = parse_diagram("inca v1\ncomponent P path 2\ncomponent Q cycle 1\ninteract P[0] by Q.0 -\n")
        assert w_code(flipped) != w_code(single_interaction)

    def test_invariant_under_stabilization(self):
        for seed in range(20):
            diagram = random_small_diagram(seed, max_vertices=8)
            code = w_code(diagram)
            for move in enumerate_moves(diagram, STABILIZATION | FALSE_STABILIZATION, include_adds=True):
                assert w_code(apply_move(diagram, move)) == code, (seed, str(move))
