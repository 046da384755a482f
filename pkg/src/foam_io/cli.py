"""
The `inca` command line. Reports are `key: value` lines on stdout.

Exit codes: 0 success, 1 invalid input or verdict NO, 2 usage error, 3 resource or numerical failure.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import click

from foam_invariants.capacity import MESSAGE_LIMIT, MessagePolicy
from foam_invariants.fingerprint import DEFAULT_PANEL
from foam_invariants.linking import LinkingVariant
from foam_invariants.quandles import MultiQuandle, QuandleAxiomError
from foam_invariants.wtangle import w_code
from foam_io.cache import SearchCache, cached_simplify
from foam_io.corpus import list_examples, load_example
from foam_io.diagram_format import ParseError, SemanticError, parse_diagram, serialize
from foam_io.dot import export_dot
from foam_io.generator import InfeasibleSpecError, perturb, random_diagram
from foam_io.quandle_format import load_quandle
from foam_io.report import CapacityAnalysis, ColoringAnalysis, LinkingAnalysis, Report
from gauss_diagram.canonical import canonical_code
from gauss_diagram.classes import (
    GaussDiagram,
    InvalidDiagramError,
    Kind,
    MoveNotApplicableError,
    NumericalError,
    ResourceLimitError,
)
from gauss_diagram.connect_sum import ConnectSumError, prime_factorize
from gauss_diagram.moves import REIDEMEISTER, STABILIZATION
from gauss_diagram.search import Outcome, SearchBudget, equivalent

logger = logging.getLogger(__name__)

SEMANTIC_ERRORS = (
    ParseError,
    SemanticError,
    InvalidDiagramError,
    QuandleAxiomError,
    ConnectSumError,
    MoveNotApplicableError,
    InfeasibleSpecError,
)
RESOURCE_ERRORS = (ResourceLimitError, NumericalError)


@dataclass
class Settings:
    workers: int
    cache: SearchCache | None


class IncaGroup(click.Group):
    """Maps library errors to exit codes"""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except SEMANTIC_ERRORS as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(1)
        except RESOURCE_ERRORS as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(3)


def echo_lines(lines: list[str]) -> None:
    for line in lines:
        click.echo(line)


def read_diagram(source: str) -> GaussDiagram:
    """A file path, `-` for stdin, or the name of a shipped example"""
    if source == "-":
        return parse_diagram(click.get_binary_stream("stdin").read())
    path = Path(source)
    if path.is_file():
        logger.info("Reading %s", path)
        return parse_diagram(path.read_bytes())
    if source in list_examples():
        return load_example(source)
    raise click.BadParameter(f"{source!r} is neither a file nor an example ({', '.join(list_examples())})")


def quandle_option(ctx, param, value: str | None) -> MultiQuandle | None:
    if value is None:
        return None
    try:
        return load_quandle(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from None


def budget_options(function):
    for decorator in reversed(
        [
            click.option("--depth", "max_depth", default=4, show_default=True, type=click.IntRange(min=0)),
            click.option("--max-states", default=20_000, show_default=True, type=click.IntRange(min=1)),
            click.option("--stable", is_flag=True, help="Allow (de)stabilization."),
            click.option("--false", "use_false", is_flag=True, help="Allow false (de)stabilization."),
            click.option("--adds", "include_adds", is_flag=True, help="Also search through additions."),
        ]
    ):
        function = decorator(function)
    return function


@click.group(cls=IncaGroup)
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debugging output.")
@click.option("--workers", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--cache", "cache_path", envvar="INCA_CACHE", default=None, type=click.Path(dir_okay=False))
@click.option("--no-cache", is_flag=True)
@click.pass_context
def cli(ctx, verbose, workers, cache_path, no_cache):
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    cache = SearchCache(cache_path) if cache_path and not no_cache else None
    ctx.obj = Settings(workers, cache)


@cli.command()
@click.argument("diagram")
def validate(diagram):
    """Checks a diagram document"""
    try:
        parsed = read_diagram(diagram)
    except SemanticError as e:
        click.echo("valid: false")
        if e.line is not None:
            click.echo(f"line: {e.line}")
        echo_lines([f"violation: {v}" for v in e.violations])
        raise click.exceptions.Exit(1)
    echo_lines(
        [
            "valid: true",
            f"components: {len(parsed.components)}",
            f"vertices: {parsed.n_vertices}",
            f"interactions: {len(parsed.interactions)}",
            f"agents: {len(parsed.agents())}",
        ]
    )


@cli.command()
@click.argument("diagram")
@click.option("--document", is_flag=True, help="Print the canonical document instead of the code.")
def canon(diagram, document):
    """Canonical code of a diagram"""
    parsed = read_diagram(diagram)
    if document:
        click.echo(serialize(parsed), nl=False)
    else:
        click.echo(f"code: {canonical_code(parsed)}")


@cli.command()
@click.argument("diagram")
@click.option("--max-steps", default=None, type=click.IntRange(min=0))
@click.option("--stable", is_flag=True)
@click.option("--false", "use_false", is_flag=True)
@click.pass_obj
def simplify(settings: Settings, diagram, max_steps, stable, use_false):
    """Greedy simplification with removal moves"""
    parsed = read_diagram(diagram)
    budget = SearchBudget(stable=stable, use_false=use_false)
    result = cached_simplify(parsed, budget, max_steps, settings.cache)
    echo_lines(
        [
            f"interactions_before: {len(parsed.interactions)}",
            f"interactions_after: {len(result.interactions)}",
            f"code: {canonical_code(result)}",
        ]
    )
    click.echo(serialize(result), nl=False)


@cli.command()
@click.argument("first")
@click.argument("second")
@budget_options
@click.pass_obj
def equiv(settings: Settings, first, second, max_depth, max_states, stable, use_false, include_adds):
    """Bounded search for a move path between two diagrams"""
    budget = SearchBudget(max_depth, max_states, stable, use_false, include_adds)
    verdict = equivalent(read_diagram(first), read_diagram(second), budget, workers=settings.workers)
    echo_lines(verdict.lines())
    if verdict.outcome is Outcome.NO:
        raise click.exceptions.Exit(1)


@cli.command()
@click.argument("diagram")
@click.option("--quandle", callback=quandle_option, help="trivial:N, dihedral:N, alexander:N:T, dihedral-plus-point or FILE.")
@click.option(
    "--linking",
    type=click.Choice([v.value for v in LinkingVariant]),
    default=LinkingVariant.REDUCED_UNFRAMED.value,
    show_default=True,
)
@click.option("--latex", type=click.Path(dir_okay=False), help="Also write a LaTeX report (extension added).")
def invariants(diagram, quandle, linking, latex):
    """Colourings, linking graph and w-code"""
    parsed = read_diagram(diagram)
    panel = [quandle] if quandle is not None else list(DEFAULT_PANEL)
    report = Report("Invariants", [ColoringAnalysis(panel), LinkingAnalysis(LinkingVariant(linking))])
    report.generate_analyses(parsed)
    echo_lines(report.lines())
    click.echo(f"wcode: {w_code(parsed)}")
    if latex:
        report.to_latex(Path(latex).with_suffix(""))


@cli.command()
@click.argument("diagram")
@click.option("--quandle", required=True, callback=quandle_option)
@click.option("--kmax", default=2, show_default=True, type=click.IntRange(min=1))
@click.option("--policy", type=click.Choice(["aut", "aut+triples", "triples", "none"]), default="aut", show_default=True)
@click.option("--theta", is_flag=True, help="Also report the Lovasz theta of the length-1 message graph.")
@click.option("--limit", default=MESSAGE_LIMIT, show_default=True, type=click.IntRange(min=1))
@click.option("--latex", type=click.Path(dir_okay=False))
def capacity(diagram, quandle, kmax, policy, theta, limit, latex):
    """Numbers of distinguishable messages of length 1..kmax"""
    parsed = read_diagram(diagram)
    analysis = CapacityAnalysis(quandle, kmax, MessagePolicy.from_name(policy), theta, limit)
    report = Report("Capacity", [analysis])
    report.generate_analyses(parsed)
    echo_lines(report.lines())
    if latex:
        report.to_latex(Path(latex).with_suffix(""))


@cli.command()
@click.argument("diagram")
@budget_options
@click.pass_obj
def factorize(settings: Settings, diagram, max_depth, max_states, stable, use_false, include_adds):
    """Agent-wise prime factorization"""
    budget = SearchBudget(max_depth, max_states, stable, use_false, include_adds)
    factorization = prime_factorize(read_diagram(diagram), budget, workers=settings.workers)
    echo_lines(factorization.lines())


@cli.command()
@click.argument("diagram")
@click.option("--to", "target", type=click.Choice(["dot", "wcode", "inca"]), required=True)
def convert(diagram, target):
    parsed = read_diagram(diagram)
    match target:
        case "dot":
            click.echo(export_dot(parsed), nl=False)
        case "wcode":
            click.echo(f"wcode: {w_code(parsed)}")
        case "inca":
            click.echo(serialize(parsed), nl=False)


def component_shape(ctx, param, values: tuple[str, ...]) -> list[tuple[Kind, int]]:
    shape = []
    for value in values:
        kind, _, size = value.partition(":")
        if kind not in ("cycle", "path") or not size.isdigit():
            raise click.BadParameter(f"expected cycle:N or path:N, got {value!r}")
        shape.append((Kind.CYCLE if kind == "cycle" else Kind.PATH, int(size)))
    return shape or [(Kind.PATH, 4), (Kind.CYCLE, 1)]


@cli.command()
@click.option("--seed", default=None, type=int)
@click.option("--component", "shape", multiple=True, callback=component_shape, help="cycle:N or path:N, repeatable.")
@click.option("--interactions", default=1, show_default=True, type=click.IntRange(min=0))
@click.option("--marks", default=0, show_default=True, type=click.IntRange(min=0))
@click.option("--moves", default=0, show_default=True, type=click.IntRange(min=0), help="Random moves applied afterwards.")
@click.option("--stable", is_flag=True, help="Perturb with (de)stabilization as well.")
def gen(seed, shape, interactions, marks, moves, stable):
    """Random diagram document"""
    diagram = random_diagram(shape, interactions, seed, marks)
    if moves:
        kinds = REIDEMEISTER | STABILIZATION if stable else REIDEMEISTER
        diagram, applied = perturb(diagram, moves, seed, kinds)
        logger.info("Applied %d moves", len(applied))
    click.echo(serialize(diagram), nl=False)


if __name__ == "__main__":
    cli()
