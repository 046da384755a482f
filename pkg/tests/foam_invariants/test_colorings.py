from itertools import product

import pytest

from foam_invariants.colorings import count_colorings, iter_colorings, quandle_presentation, realized_triples
from foam_invariants.quandles import (
    MultiQuandle,
    Operation,
    QuandleAxiomError,
    alexander,
    dihedral,
    dihedral_plus_point,
    trivial,
    union,
)
from foam_io.generator import random_small_diagram
from gauss_diagram.classes import GaussDiagram, Sign
from gauss_diagram.moves import REIDEMEISTER, STABILIZATION, apply_move, enumerate_moves


def brute_force_count(diagram: GaussDiagram, quandle: MultiQuandle) -> int:
    vertices = list(diagram.vertices())
    agents = sorted(diagram.support())
    count = 0
    for ops in product(quandle.op_names, repeat=len(agents)):
        assigned = dict(zip(agents, ops))
        for colours in product(range(quandle.size), repeat=len(vertices)):
            colour = dict(zip(vertices, colours))
            ok = True
            for e in diagram.edges():
                tail, head = colour[diagram.tail_of(e)], colour[diagram.head_of(e)]
                interaction = diagram.interaction_on(e)
                if interaction is None:
                    ok = tail == head
                else:
                    op = quandle.op(assigned[interaction.agent])
                    if interaction.sign is Sign.NEG:
                        op = quandle.op(op.inverse)
                    ok = head == op.table[tail, colour[interaction.agent]]
                if not ok:
                    break
            count += ok
    return count


class TestCounts:
    @pytest.mark.parametrize("quandle", [dihedral(3), trivial(3)])
    def test_single_interaction(self, single_interaction, quandle):
        assert count_colorings(single_interaction, quandle) == 9

    def test_trivial_diagram_counts_components(self, path_and_triangle):
        assert count_colorings(path_and_triangle, dihedral(5)) == 25

    def test_capacity_triangle(self, capacity_triangle):
        assert count_colorings(capacity_triangle, dihedral(3)) == 9
        assert count_colorings(capacity_triangle, dihedral(5)) == 5

    def test_kishino_analogue_looks_trivial(self, kishino):
        assert count_colorings(kishino, dihedral(3)) == 3

    def test_operations_multiply(self, single_interaction):
        assert count_colorings(single_interaction, union(dihedral(3), trivial(3))) == 18

    def test_invalid_quandle_is_refused(self, single_interaction):
        with pytest.raises(QuandleAxiomError):
            table = dihedral(3).op("r").table.copy()
            table[0, 0] = 1
            count_colorings(single_interaction, MultiQuandle("broken", 3, (Operation("r", table, "r"),)))

    @pytest.mark.parametrize("quandle", [dihedral(3), alexander(5, 2), union(dihedral(3), trivial(3))])
    def test_matches_brute_force(self, quandle):
        for seed in range(12):
            diagram = random_small_diagram(seed, max_vertices=4)
            assert count_colorings(diagram, quandle) == brute_force_count(diagram, quandle), seed

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_trivial_quandle_counts_components(self, n):
        for seed in range(20):
            diagram = random_small_diagram(seed, max_vertices=8)
            assert count_colorings(diagram, trivial(n)) == n ** len(diagram.components)

    def test_iter_agrees_with_count(self, capacity_triangle):
        colorings = list(iter_colorings(capacity_triangle, dihedral(3)))
        assert len(colorings) == 9
        for coloring in colorings:
            assert sum(coloring.colors.values()) % 3 == 0


class TestMoveInvariance:
    def check(self, seeds, max_vertices):
        quandles = [trivial(3), dihedral(3), dihedral(5), dihedral_plus_point()]
        for seed in seeds:
            diagram = random_small_diagram(seed, max_vertices=max_vertices)
            counts = [count_colorings(diagram, q) for q in quandles]
            for move in enumerate_moves(diagram, REIDEMEISTER | STABILIZATION, include_adds=True):
                moved = apply_move(diagram, move)
                assert [count_colorings(moved, q) for q in quandles] == counts, (seed, str(move))

    def test_invariant_under_moves(self):
        self.check(range(15), 6)

    @pytest.mark.slow
    def test_invariant_under_moves_full(self):
        self.check(range(100, 600), 8)


class TestTriplesAndPresentation:
    def test_single_interaction_realizes_every_pair(self, single_interaction):
        quandle = dihedral(3)
        triples = realized_triples(single_interaction, quandle)
        assert triples == {(x, a, int(quandle.op("r").table[x, a])) for x in range(3) for a in range(3)}

    def test_presentation(self, single_interaction):
        presentation = quandle_presentation(single_interaction)
        assert len(presentation.generators) == 3
        assert len(presentation.op_symbols) == 1
        assert len(presentation.relations) == 2
        assert any("▷" in str(r) for r in presentation.relations)
