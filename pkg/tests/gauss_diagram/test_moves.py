import pytest

from foam_io.corpus import load_example
from foam_io.diagram_format import parse_diagram
from foam_io.generator import random_small_diagram
from gauss_diagram.canonical import canonical_code
from gauss_diagram.classes import EdgeRef, MoveNotApplicableError, Sign, VertexRef
from gauss_diagram.moves import (
    ALL_MOVES,
    MoveInstance,
    MoveKind,
    Side,
    apply_move,
    apply_move_tracked,
    destabilize,
    enumerate_moves,
    false_destabilize,
    false_stabilize,
    inverse_move,
    r1_add,
    r1_remove,
    r2_cancel,
    r2_insert,
    r3_slide,
    r3_unslide,
    stabilize,
)


@pytest.fixture
def kink():
    return parse_diagram("inca v1\ncomponent P path 2\ninteract P[0] by P.0 +\n")


@pytest.fixture
def acting_bare_edge():
    """P[0] is bare while both of its endpoints act on Q"""
    return parse_diagram(
        "inca v1\ncomponent P path 2\ncomponent Q path 3\ninteract Q[0] by P.0 +\ninteract Q[1] by P.1 +\n"
    )


def assert_round_trip(diagram, move):
    inverse = inverse_move(diagram, move)
    restored = apply_move(apply_move(diagram, move), inverse)
    assert canonical_code(restored) == canonical_code(diagram), f"{move} then {inverse}"


class TestReidemeister:
    def test_r1_remove_kink(self, kink):
        assert not r1_remove(kink, EdgeRef("P", 0)).interactions

    def test_r1_add_then_remove(self, kink):
        bare = kink.trivial()
        added = r1_add(bare, EdgeRef("P", 0), VertexRef("P", 1), Sign.NEG)
        assert len(added.interactions) == 1
        assert canonical_code(r1_remove(added, EdgeRef("P", 0))) == canonical_code(bare)

    def test_r1_needs_an_endpoint_agent(self, single_interaction):
        with pytest.raises(MoveNotApplicableError) as info:
            r1_remove(single_interaction, EdgeRef("P", 0))
        assert info.value.kind is MoveKind.R1_REMOVE

    def test_r2_pair(self):
        before, after = load_example("r2_before"), load_example("r2_after")
        inserted = r2_insert(before, VertexRef("P", 1), VertexRef("Q", 0), Sign.POS)
        assert canonical_code(inserted) == canonical_code(after)
        assert canonical_code(r2_cancel(after, VertexRef("P", 1))) == canonical_code(before)

    def test_r2_cancel_needs_opposite_signs(self):
        same = parse_diagram(
            "inca v1\ncomponent P path 3\ncomponent Q cycle 1\ninteract P[0] by Q.0 +\ninteract P[1] by Q.0 +\n"
        )
        with pytest.raises(MoveNotApplicableError):
            r2_cancel(same, VertexRef("P", 1))

    def test_r2_insert_at_an_agent_is_refused(self):
        before = load_example("r2_before").evolve(marks=frozenset({VertexRef("P", 1)}))
        with pytest.raises(MoveNotApplicableError):
            r2_insert(before, VertexRef("P", 1), VertexRef("P", 0), Sign.POS)

    def test_r3_pair(self):
        before, after = load_example("r3_before"), load_example("r3_after")
        slid = r3_slide(before, VertexRef("C", 0), EdgeRef("A", 0))
        assert canonical_code(slid) == canonical_code(after)
        back = r3_unslide(after, VertexRef("C", 0), EdgeRef("A", 0))
        assert canonical_code(back) == canonical_code(before)

    def test_r3_needs_the_second_interaction(self):
        broken = parse_diagram(
            "inca v1\ncomponent A path 2\ncomponent X path 3\ncomponent C cycle 1\n"
            "interact A[0] by C.0 +\ninteract X[0] by A.0 +\n"
        )
        with pytest.raises(MoveNotApplicableError):
            r3_slide(broken, VertexRef("C", 0), EdgeRef("A", 0))


class TestStabilization:
    def test_stabilize_then_destabilize(self):
        path = parse_diagram("inca v1\ncomponent P path 2\ninteract P[0] by P.0 +\n")
        grown = stabilize(path, VertexRef("P", 1), Side.AFTER)
        assert grown.component("P").size == 3
        assert canonical_code(destabilize(grown, EdgeRef("P", 1))) == canonical_code(path)

    def test_stabilize_a_loop(self, trivial_loop):
        grown = stabilize(trivial_loop, VertexRef("Q", 0))
        assert grown.component("Q").size == 2
        assert grown.n_edges == 2

    def test_destab_refuses_two_agents(self, acting_bare_edge):
        with pytest.raises(MoveNotApplicableError):
            destabilize(acting_bare_edge, EdgeRef("P", 0))

    def test_false_destab_merges_agents(self, acting_bare_edge):
        merged = false_destabilize(acting_bare_edge, EdgeRef("P", 0))
        assert merged.component("P").size == 1
        assert {i.agent for i in merged.interactions} == {VertexRef("P", 0)}

    def test_false_stab_splits_actions(self, acting_bare_edge):
        merged = false_destabilize(acting_bare_edge, EdgeRef("P", 0))
        split = false_stabilize(merged, VertexRef("P", 0), Side.AFTER, [EdgeRef("Q", 1)])
        assert canonical_code(split) == canonical_code(acting_bare_edge)

    def test_destab_removes_the_requested_endpoint(self, kishino):
        shrunk = destabilize(kishino, EdgeRef("K", 1), VertexRef("K", 1))
        assert shrunk.component("K").size == 3
        assert len(shrunk.interactions) == 2

    def test_tracking_maps_every_vertex(self, kishino):
        rewired = apply_move_tracked(kishino, MoveInstance(MoveKind.DESTAB, edge=EdgeRef("K", 1), vertex=VertexRef("K", 1)))
        assert set(rewired.vertex_map) == set(kishino.vertices())
        assert rewired.vertex_map[VertexRef("K", 1)] == rewired.vertex_map[VertexRef("K", 2)]


class TestEnumeration:
    def test_additions_only_on_request(self, single_interaction):
        kinds = {m.kind for m in enumerate_moves(single_interaction)}
        assert not any(k.is_addition for k in kinds)
        with_adds = {m.kind for m in enumerate_moves(single_interaction, include_adds=True)}
        assert MoveKind.R1_ADD in with_adds
        assert MoveKind.STAB in with_adds

    def test_enumerated_moves_apply(self, kishino):
        for move in enumerate_moves(kishino, ALL_MOVES, include_adds=True):
            apply_move(kishino, move)

    def test_kind_filter(self, kishino):
        moves = enumerate_moves(kishino, {MoveKind.DESTAB})
        assert moves and all(m.kind is MoveKind.DESTAB for m in moves)

    def test_enumeration_is_deterministic(self, capacity_triangle):
        first = [str(m) for m in enumerate_moves(capacity_triangle, include_adds=True)]
        assert first == [str(m) for m in enumerate_moves(capacity_triangle, include_adds=True)]


class TestInverse:
    @pytest.mark.parametrize("name", ["single_interaction", "r2_after", "r3_before", "kishino_analogue"])
    def test_corpus_round_trips(self, name):
        diagram = load_example(name)
        for move in enumerate_moves(diagram, ALL_MOVES, include_adds=True):
            assert_round_trip(diagram, move)

    def test_random_round_trips(self):
        for seed in range(25):
            diagram = random_small_diagram(seed, max_vertices=7)
            for move in enumerate_moves(diagram, ALL_MOVES, include_adds=True):
                assert_round_trip(diagram, move)

    @pytest.mark.slow
    def test_random_round_trips_full(self):
        for seed in range(200):
            diagram = random_small_diagram(1000 + seed, max_vertices=12)
            for move in enumerate_moves(diagram, ALL_MOVES, include_adds=True):
                assert_round_trip(diagram, move)
