import pytest
from click.testing import CliRunner

from foam_io.cli import cli
from foam_io.diagram_format import parse_diagram


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def write(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def lines_of(result) -> list[str]:
    return result.output.splitlines()


##### validate / canon / convert #####


class TestDocuments:
    def test_validate(self, runner):
        result = runner.invoke(cli, ["validate", "single_interaction"])
        assert result.exit_code == 0
        assert "valid: true" in lines_of(result)
        assert "interactions: 1" in lines_of(result)

    def test_validate_reports_the_line(self, runner, write):
        path = write("bad.inca", "inca v1\ncomponent P path 2\ncomponent Q cycle 1\ninteract P[5] by Q.0 +\n")
        result = runner.invoke(cli, ["validate", path])
        assert result.exit_code == 1
        assert "valid: false" in lines_of(result)
        assert "line: 4" in lines_of(result)

    def test_syntax_error_exits_1(self, runner, write):
        result = runner.invoke(cli, ["validate", write("bad.inca", "inca v2\n")])
        assert result.exit_code == 1

    def test_canon_ignores_names(self, runner, write):
        path = write("renamed.inca", "inca v1\ncomponent L cycle 1\ncomponent S path 2\ninteract S[0] by L.0 +\n")
        first = runner.invoke(cli, ["canon", path])
        second = runner.invoke(cli, ["canon", "single_interaction"])
        assert first.exit_code == 0
        assert first.output == second.output
        assert first.output.startswith("code: ")

    def test_canon_from_stdin(self, runner):
        result = runner.invoke(cli, ["canon", "--document", "-"], input="inca v1\ncomponent P path 2\n")
        assert result.output == "inca v1\ncomponent P path 2\n"

    def test_convert_to_dot(self, runner):
        result = runner.invoke(cli, ["convert", "kishino_analogue", "--to", "dot"])
        assert result.exit_code == 0
        assert result.output.startswith("digraph")

    def test_missing_input_is_a_usage_error(self, runner):
        assert runner.invoke(cli, ["canon", "no_such_example"]).exit_code == 2

    def test_unknown_subcommand(self, runner):
        assert runner.invoke(cli, ["frobnicate"]).exit_code == 2


##### search commands #####


class TestSearch:
    def test_equiv_yes(self, runner):
        result = runner.invoke(cli, ["equiv", "r2_before", "r2_after", "--depth", "1"])
        assert result.exit_code == 0
        assert lines_of(result)[:2] == ["verdict: yes", "witness_length: 1"]

    def test_equiv_no(self, runner, write):
        trivial = write("trivial.inca", "inca v1\ncomponent P path 2\ncomponent Q cycle 1\n")
        result = runner.invoke(cli, ["equiv", "single_interaction", trivial])
        assert result.exit_code == 1
        assert lines_of(result)[0] == "verdict: no"
        assert any(line.startswith("certificate: ") for line in lines_of(result))

    def test_equiv_unknown_exits_0(self, runner, write):
        trivial = write("trivial.inca", "inca v1\ncomponent K cycle 4\n")
        result = runner.invoke(cli, ["equiv", "kishino_analogue", trivial])
        assert result.exit_code == 0
        assert lines_of(result)[0] == "verdict: unknown"

    def test_equiv_stable(self, runner, write):
        trivial = write("trivial.inca", "inca v1\ncomponent K cycle 4\n")
        result = runner.invoke(cli, ["equiv", "kishino_analogue", trivial, "--stable", "--depth", "8"])
        assert lines_of(result)[0] == "verdict: yes"

    def test_simplify_with_a_cache(self, runner, write, tmp_path):
        path = write("kinks.inca", "inca v1\ncomponent P path 3\ninteract P[0] by P.0 +\ninteract P[1] by P.2 -\n")
        cache = tmp_path / "cache.jsonl"
        for _ in range(2):
            result = runner.invoke(cli, ["--cache", str(cache), "simplify", path])
            assert result.exit_code == 0
            assert "interactions_after: 0" in lines_of(result)
        assert len(cache.read_text().splitlines()) == 1

    def test_factorize(self, runner):
        result = runner.invoke(cli, ["factorize", "single_interaction"])
        assert result.exit_code == 0
        assert lines_of(result)[0] == "factors: 1"


##### invariants / capacity #####


class TestInvariants:
    def test_colorings(self, runner):
        result = runner.invoke(cli, ["invariants", "single_interaction", "--quandle", "dihedral:3"])
        assert result.exit_code == 0
        assert "colorings: 9" in lines_of(result)
        assert any(line.startswith("wcode: ") for line in lines_of(result))

    def test_large_quandle(self, runner):
        result = runner.invoke(cli, ["invariants", "single_interaction", "--quandle", "dihedral:9"])
        assert result.exit_code == 0
        assert {"colorings: 81", "automorphisms: skipped"} <= set(lines_of(result))

    def test_bad_quandle_is_a_usage_error(self, runner):
        result = runner.invoke(cli, ["invariants", "single_interaction", "--quandle", "dihedral:x"])
        assert result.exit_code == 2

    def test_capacity(self, runner):
        result = runner.invoke(cli, ["capacity", "capacity_triangle", "--quandle", "dihedral:3"])
        assert result.exit_code == 0
        assert {"cap_1: 1", "cap_2: 2"} <= set(lines_of(result))

    def test_capacity_needs_a_quandle(self, runner):
        assert runner.invoke(cli, ["capacity", "capacity_triangle"]).exit_code == 2

    def test_capacity_over_the_limit_exits_3(self, runner):
        result = runner.invoke(cli, ["capacity", "capacity_triangle", "--quandle", "dihedral:3", "--kmax", "7"])
        assert result.exit_code == 3


##### gen #####


class TestGen:
    def test_seeded_document(self, runner):
        args = ["gen", "--seed", "4", "--component", "cycle:3", "--component", "path:2", "--interactions", "2"]
        first = runner.invoke(cli, args)
        assert first.exit_code == 0
        assert first.output == runner.invoke(cli, args).output
        assert len(parse_diagram(first.output).interactions) == 2

    def test_infeasible_exits_1(self, runner):
        result = runner.invoke(cli, ["gen", "--component", "path:2", "--interactions", "5"])
        assert result.exit_code == 1

    def test_bad_component(self, runner):
        assert runner.invoke(cli, ["gen", "--component", "tree:3"]).exit_code == 2
