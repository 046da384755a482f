from pathlib import PurePath

from pylatex import Figure
from pylatex.base_classes import Container, LatexObject
from pylatex.package import Package
from pylatex.utils import NoEscape


class LatexString(LatexObject):
    """Holds a ready-made LaTeX string and returns it from dumps()"""

    def __init__(self, latex_string: str, *args, **kwargs):
        self.latex_string = latex_string
        super().__init__(*args, **kwargs)

    def dumps(self) -> str:
        return self.latex_string


class LatexStringTable(LatexString):
    """A LaTeX table string together with the packages it needs to compile"""

    packages = [Package("booktabs"), Package("float"), Package("longtable")]


class LatexVerbatim(LatexString):
    """Line-oriented text set in a verbatim block"""

    def __init__(self, lines: list[str], *args, **kwargs):
        body = "\n".join(lines)
        super().__init__(f"\\begin{{verbatim}}\n{body}\n\\end{{verbatim}}", *args, **kwargs)


class LatexSequence(Container):
    """Concatenation of LaTeX objects without an enclosing environment"""

    def dumps(self) -> str:
        return self.dumps_content()


class FigureContainer(LatexSequence):
    """One float per image path"""

    def __init__(self, paths: list[PurePath], *, width=NoEscape(r"0.8\textwidth"), position="H"):
        data = []
        for path in paths:
            figure = Figure(position=position)
            figure.add_image(str(path), width=width)
            data.append(figure)
        super().__init__(data=data)
