import pytest

from foam_io.generator import InfeasibleSpecError, component_names, perturb, random_diagram, random_small_diagram
from gauss_diagram.canonical import canonical_code
from gauss_diagram.classes import Kind, validate
from gauss_diagram.moves import MoveKind


class TestRandomDiagram:
    def test_exact_counts(self):
        diagram = random_diagram([(Kind.PATH, 5), (Kind.CYCLE, 3)], 4, seed=1, n_marks=2)
        assert [c.name for c in diagram.components] == ["C0", "C1"]
        assert len(diagram.interactions) == 4
        assert len(diagram.marks) == 2
        assert validate(diagram) == []

    def test_seeded(self):
        shape = [(Kind.CYCLE, 4)]
        assert random_diagram(shape, 3, seed=5) == random_diagram(shape, 3, seed=5)

    def test_every_edge_can_be_used(self):
        diagram = random_diagram([(Kind.CYCLE, 3)], 3, seed=0)
        assert not diagram.bare_edges()

    @pytest.mark.parametrize(
        "shape, interactions, marks",
        [([(Kind.PATH, 0)], 0, 0), ([(Kind.PATH, 2)], 2, 0), ([(Kind.CYCLE, 2)], 0, 3), ([(Kind.PATH, 2)], -1, 0)],
    )
    def test_infeasible(self, shape, interactions, marks):
        with pytest.raises(InfeasibleSpecError):
            random_diagram(shape, interactions, n_marks=marks)

    def test_names(self):
        assert component_names(3) == ["C0", "C1", "C2"]


class TestRandomSmallDiagram:
    def test_bounds(self):
        for seed in range(40):
            diagram = random_small_diagram(seed, max_vertices=9, max_components=3)
            assert 1 <= len(diagram.components) <= 3
            assert diagram.n_vertices <= 9
            assert validate(diagram) == []

    def test_seeded(self):
        assert canonical_code(random_small_diagram(3)) == canonical_code(random_small_diagram(3))


class TestPerturb:
    def test_applies_the_requested_kinds(self, path_and_triangle):
        kinds = {MoveKind.R1_ADD, MoveKind.R2_INSERT}
        perturbed, applied = perturb(path_and_triangle, 4, seed=2, kinds=kinds)
        assert len(applied) == 4
        assert all(m.kind in kinds for m in applied)
        assert len(perturbed.interactions) > len(path_and_triangle.interactions)

    def test_stops_when_nothing_applies(self, path_and_triangle):
        perturbed, applied = perturb(path_and_triangle, 3, seed=0, kinds={MoveKind.R1_REMOVE})
        assert applied == []
        assert perturbed == path_and_triangle

    def test_seeded(self, kishino):
        first, _ = perturb(kishino, 5, seed=9)
        second, _ = perturb(kishino, 5, seed=9)
        assert canonical_code(first) == canonical_code(second)
