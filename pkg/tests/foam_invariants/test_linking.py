import pytest

from foam_invariants.linking import LinkingVariant, linking_code, linking_graph, linking_vectors
from foam_io.diagram_format import parse_diagram
from foam_io.generator import random_small_diagram
from gauss_diagram.classes import VertexRef
from gauss_diagram.moves import STABILIZATION, MoveKind, apply_move, enumerate_moves


@pytest.fixture
def kink():
    return parse_diagram("inca v1\ncomponent P path 3\ninteract P[1] by P.1 +\n")


class TestVectors:
    def test_single_interaction(self, single_interaction):
        vectors = linking_vectors(single_interaction)
        assert vectors[VertexRef("Q", 0)] == (1, 0)
        assert vectors[VertexRef("P", 0)] == (0, 0)

    def test_unframed_drops_self_linking(self, kink):
        assert linking_vectors(kink)[VertexRef("P", 1)] == (1,)
        assert linking_vectors(kink, framed=False)[VertexRef("P", 1)] == (0,)

    def test_opposite_signs_cancel(self):
        diagram = parse_diagram(
            "inca v1\ncomponent P path 3\ncomponent Q cycle 1\ninteract P[0] by Q.0 +\ninteract P[1] by Q.0 -\n"
        )
        assert linking_graph(diagram).is_zero()


class TestGraph:
    def test_reduced_keeps_nonzero_vertices(self, single_interaction):
        graph = linking_graph(single_interaction, LinkingVariant.REDUCED)
        assert graph.chains == ((VertexRef("P", 0),), (VertexRef("Q", 0),))
        assert graph.nonzero_agents() == [VertexRef("Q", 0)]

    def test_frame(self, single_interaction):
        frame = linking_graph(single_interaction).to_frame()
        assert list(frame.columns) == ["P", "Q"]
        assert frame.loc["Q.0", "P"] == 1
        assert frame.index.name == "vertex"

    def test_variants(self):
        assert LinkingVariant.FULL.framed and not LinkingVariant.FULL.reduced
        assert LinkingVariant.REDUCED_UNFRAMED.reduced and not LinkingVariant.REDUCED_UNFRAMED.framed


class TestCodes:
    def test_kink_is_invisible_unframed(self, kink):
        assert linking_code(kink) == linking_code(kink.trivial())
        assert linking_code(kink, LinkingVariant.FULL) != linking_code(kink.trivial(), LinkingVariant.FULL)

    def test_single_interaction_is_visible(self, single_interaction):
        assert linking_code(single_interaction) != linking_code(single_interaction.trivial())

    def test_renaming(self, single_interaction):
        renamed = parse_diagram("inca v1\ncomponent L cycle 1\ncomponent S path 2\ninteract S[0] by L.0 +\n")
        for variant in LinkingVariant:
            assert linking_code(single_interaction, variant) == linking_code(renamed, variant)

    def test_position_along_a_path_is_suppressed(self):
        header = "inca v1\ncomponent P path 4\ncomponent Q cycle 1\n"
        early = parse_diagram(header + "interact Q[0] by P.0 +\n")
        late = parse_diagram(header + "interact Q[0] by P.2 +\n")
        assert linking_code(early) == linking_code(late)

    @pytest.mark.parametrize(
        "kinds, variant",
        [
            ({MoveKind.R1_ADD, MoveKind.R1_REMOVE, MoveKind.R2_INSERT, MoveKind.R2_CANCEL} | STABILIZATION,
             LinkingVariant.REDUCED_UNFRAMED),
            ({MoveKind.R2_INSERT, MoveKind.R2_CANCEL, MoveKind.R3_SLIDE, MoveKind.R3_UNSLIDE}, LinkingVariant.FULL),
            ({MoveKind.R3_SLIDE, MoveKind.R3_UNSLIDE}, LinkingVariant.REDUCED_UNFRAMED),
        ],
    )
    def test_invariance(self, kinds, variant):
        for seed in range(20):
            diagram = random_small_diagram(seed, max_vertices=8)
            code = linking_code(diagram, variant)
            for move in enumerate_moves(diagram, kinds, include_adds=True):
                assert linking_code(apply_move(diagram, move), variant) == code, (seed, str(move))
