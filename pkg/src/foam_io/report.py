"""
Invariant analyses of a single diagram and the LaTeX report assembling them.

Each Analysis computes a pandas result from a diagram (generate_analysis) and renders it as a
pylatex object (to_latex). Report runs a list of analyses and writes one document.
"""

import logging
import os
from abc import ABC, abstractmethod
from enum import Enum, member
from pathlib import PurePath
from tempfile import mkdtemp
from typing import Any, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from matplotlib.figure import Figure
from pylatex import Document, Section
from pylatex.base_classes import LatexObject

from foam_invariants.capacity import MESSAGE_LIMIT, MessagePolicy, cap_report, message_graph
from foam_invariants.colorings import count_colorings, realized_triples
from foam_invariants.fingerprint import DEFAULT_PANEL
from foam_invariants.linking import LinkingVariant, linking_graph
from foam_invariants.quandles import MultiQuandle, automorphisms
from foam_invariants.theta import lovasz_theta
from foam_io.latex_string import FigureContainer, LatexSequence, LatexStringTable, LatexVerbatim
from gauss_diagram.classes import GaussDiagram, ResourceLimitError, require_valid

logger = logging.getLogger(__name__)


class Options(Enum):
    """Options base class for Analysis objects"""

    def __call__(self, *args):
        return self.value(*args)


class ColoringOptions(Options):
    """Columns of the colouring table, each a function of (diagram, quandle)"""

    COLORINGS = member(lambda diagram, quandle: count_colorings(diagram, quandle))
    TRIPLES = member(lambda diagram, quandle: len(realized_triples(diagram, quandle)))
    AUTOMORPHISMS = member(lambda diagram, quandle: len(automorphisms(quandle)))


class Filter(ABC):
    """Row filters applied to an analysis result before it is stored"""

    @abstractmethod
    def apply_filter(self, result: pd.DataFrame) -> pd.DataFrame:
        pass

    def __repr__(self) -> str:
        return "%s(%r)" % (self.__class__.__name__, self.__dict__)


class FilterNothing(Filter):
    def apply_filter(self, result: pd.DataFrame) -> pd.DataFrame:
        return result

    def __str__(self) -> str:
        return "No filter was applied"


class FilterZeroRows(Filter):
    """Drops rows whose numeric entries are all zero"""

    def apply_filter(self, result: pd.DataFrame) -> pd.DataFrame:
        numeric = result.select_dtypes(include=np.number)
        return result.loc[(numeric != 0).any(axis=1)]

    def __str__(self) -> str:
        return "Rows with only zero entries were dropped"


class Analysis(ABC):
    """Analysis Abstract Base Class"""

    filter: Filter
    section_title: str
    result: Any

    def __init__(self, filter: Filter | None = None) -> None:
        self.filter = filter if filter is not None else FilterNothing()
        logger.info("%s with %s", type(self).__name__, self.filter)

    @abstractmethod
    def generate_analysis(self, diagram: GaussDiagram) -> None:
        pass

    def _save_result(self, result: pd.DataFrame) -> None:
        self.result = self.filter.apply_filter(result)

    @abstractmethod
    def lines(self) -> list[str]:
        """`key: value` lines for the command line report"""

    @abstractmethod
    def to_latex(self, **kwargs) -> LatexObject:
        pass


class LinkingAnalysis(Analysis):
    """Linking vectors of every kept vertex, one column per component"""

    section_title: str = "Linking graph"

    def __init__(self, variant: LinkingVariant = LinkingVariant.REDUCED_UNFRAMED, filter: Filter | None = None) -> None:
        super().__init__(filter)
        self.variant = variant

    def generate_analysis(self, diagram: GaussDiagram) -> None:
        self.graph = linking_graph(diagram, self.variant)
        self._save_result(self.graph.to_frame())

    def lines(self) -> list[str]:
        lines = [f"linking_variant: {self.variant.value}", f"linking_code: {self.graph.code}"]
        lines += [f"linking {vertex}: {' '.join(str(x) for x in row)}" for vertex, row in self.result.iterrows()]
        return lines

    def to_latex(self, **kwargs) -> LatexObject:
        styler = self.result.style
        styler.format(escape="latex")
        return LatexStringTable(
            styler.to_latex(
                caption=f"Linking vectors ({self.variant.value})",
                position="H",
                label="table:linking",
                hrules=True,
            )
        )


class ColoringAnalysis(Analysis):
    """Colouring counts and related quantities over a panel of quandles"""

    section_title: str = "Quandle colourings"

    def __init__(
        self,
        panel: Sequence[MultiQuandle] = DEFAULT_PANEL,
        options: type[ColoringOptions] = ColoringOptions,
        filter: Filter | None = None,
    ) -> None:
        super().__init__(filter)
        self.panel = tuple(panel)
        self.options = options

    def generate_analysis(self, diagram: GaussDiagram) -> None:
        require_valid(diagram)
        rows = [{option.name.lower(): self._value(option, diagram, quandle) for option in self.options} for quandle in self.panel]
        result = pd.DataFrame(rows, index=pd.Index([q.name for q in self.panel], name="quandle")).astype("Int64")
        self._save_result(result)

    @staticmethod
    def _value(option: ColoringOptions, diagram: GaussDiagram, quandle: MultiQuandle) -> int | None:
        try:
            return int(option(diagram, quandle))
        except ResourceLimitError as e:
            logger.warning("Skipping %s over %s: %s", option.name.lower(), quandle.name, e)
            return None

    def lines(self) -> list[str]:
        def shown(value) -> str:
            return "skipped" if pd.isna(value) else str(value)

        if len(self.result) == 1:
            (name, row), = self.result.iterrows()
            return [f"quandle: {name}"] + [f"{column}: {shown(value)}" for column, value in row.items()]
        return [f"{column} {name}: {shown(value)}" for name, row in self.result.iterrows() for column, value in row.items()]

    def to_latex(self, **kwargs) -> LatexObject:
        styler = self.result.style
        styler.format(escape="latex", na_rep="skipped")
        return LatexStringTable(
            styler.to_latex(caption="Colourings per quandle", position="H", label="table:colorings", hrules=True)
        )


class CapacityAnalysis(Analysis):
    """Cap_k for k = 1..kmax with the growth of Cap_k^(1/k), optionally the theta bound on Cap_1"""

    section_title: str = "Message capacity"

    def __init__(
        self,
        quandle: MultiQuandle,
        kmax: int = 2,
        policy: MessagePolicy = MessagePolicy(),
        theta: bool = False,
        limit: int = MESSAGE_LIMIT,
        filter: Filter | None = None,
    ) -> None:
        super().__init__(filter)
        self.quandle = quandle
        self.kmax = kmax
        self.policy = policy
        self.theta = theta
        self.limit = limit

    def generate_analysis(self, diagram: GaussDiagram) -> None:
        self.report = cap_report(diagram, self.quandle, self.kmax, self.policy, self.limit)
        self.theta_value = None
        if self.theta:
            self.theta_value = lovasz_theta(message_graph(diagram, self.quandle, 1, self.policy, self.limit))
        self._save_result(self.report.to_frame())

    def lines(self) -> list[str]:
        lines = self.report.lines()
        if self.theta_value is not None:
            lines.insert(-1, f"theta_1: {self.theta_value:.6f}")
        return lines

    def figure(self) -> Figure:
        fig, ax = plt.subplots()
        ax.plot(self.result.index, self.result["root"], marker="o", label="Cap_k^(1/k)")
        ax.axhline(self.report.upper_bound, linestyle="--", color="grey", label="number of colours")
        if self.theta_value is not None:
            ax.axhline(self.theta_value, linestyle=":", color="black", label="theta")
        ax.set_xlabel("k")
        ax.set_xticks(list(self.result.index))
        ax.set_title(f"{self.quandle.name}, policy {self.policy.name}")
        ax.legend()
        return fig

    def to_file(self, directory: PurePath | None = None, extension: str = "pdf") -> list[PurePath]:
        if directory is None:
            directory = PurePath(mkdtemp())
        path = PurePath(directory, f"capacity.{extension}")
        fig = self.figure()
        fig.savefig(path)
        plt.close(fig)
        return [path]

    def to_latex(
        self, directory: PurePath | None = None, extension: str = "pdf", tex_directory: PurePath | None = None
    ) -> LatexObject:
        """Figure includes are written relative to tex_directory when it is given"""
        styler = self.result.style
        styler.format(escape="latex", precision=4)
        table = LatexStringTable(
            styler.to_latex(caption="Distinguishable messages", position="H", label="table:capacity", hrules=True)
        )
        paths = self.to_file(directory, extension)
        if tex_directory is not None:
            paths = [PurePath(os.path.relpath(path, tex_directory)) for path in paths]
        return LatexSequence(data=[table, FigureContainer(paths)])


class Report:
    """Runs the given analyses on one diagram and assembles a LaTeX document"""

    def __init__(self, title: str, analyses: list[Analysis]) -> None:
        self.title = title
        self.analyses = analyses

    def generate_analyses(self, diagram: GaussDiagram) -> None:
        for analysis in self.analyses:
            logger.info("Running %s", type(analysis).__name__)
            analysis.generate_analysis(diagram)

    def lines(self) -> list[str]:
        return [line for analysis in self.analyses for line in analysis.lines()]

    def to_latex(self, filepath: PurePath, **kwargs) -> None:
        """Writes filepath.tex; pylatex appends the extension. Figures go next to it unless a directory is given"""
        tex_directory = PurePath(filepath).parent
        kwargs.setdefault("directory", tex_directory)
        kwargs["tex_directory"] = tex_directory
        doc = Document()
        self._fill_latex_document(doc, **kwargs)
        doc.generate_tex(str(filepath))
        logger.info("Wrote %s.tex", filepath)

    def _fill_latex_document(self, document: Document, **kwargs) -> None:
        with document.create(Section(self.title, numbering=False)):
            document.append(LatexVerbatim(self.lines()))
        for analysis in self.analyses:
            with document.create(Section(analysis.section_title)):
                document.append(analysis.to_latex(**kwargs))
