"""System file parsing and rendering.

Normative layout (UTF-8, '#' starts a comment):

    vars: x y          # solution variables, space separated
    params: u1 u2      # optional parameters
    precision: 30      # optional metadata (bits)
    t0: 0              # optional (identification)
    h: 2               # optional (identification)
    eqs:               # one polynomial per line
    x^2 + u1*y - 1
    ...
    matrix:            # alternative to eqs: transfer matrix rows,
    s/(s+1) ; 1/(s+1)  # entries separated by ';'
    data:              # optional: time series rows "t y"
    0 2.00

Values are exact: decimal literals are converted to rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import ParseError
from .multipoly import MultiPoly
from .parsing import parse_multipoly
from .rationals import Rational, rational_from_decimal

_SECTION_KEYS = ("vars", "params", "eqs", "matrix", "data", "precision", "t0", "h")


@dataclass
class SystemFile:
    vars: tuple[str, ...] = ()
    params: tuple[str, ...] = ()
    eqs: tuple[MultiPoly, ...] = ()
    eq_texts: tuple[str, ...] = ()
    matrix_rows: tuple[str, ...] = ()
    data: tuple[tuple[Rational, Rational], ...] = ()
    precision: int | None = None
    t0: Rational | None = None
    h: int | None = None

    @property
    def ring(self) -> tuple[str, ...]:
        return tuple(self.vars) + tuple(self.params)

    def render(self) -> str:
        lines = []
        if self.vars:
            lines.append("vars: " + " ".join(self.vars))
        if self.params:
            lines.append("params: " + " ".join(self.params))
        if self.precision is not None:
            lines.append(f"precision: {self.precision}")
        if self.t0 is not None:
            lines.append(f"t0: {self.t0}")
        if self.h is not None:
            lines.append(f"h: {self.h}")
        if self.eqs:
            lines.append("eqs:")
            lines.extend(str(e) for e in self.eqs)
        if self.matrix_rows:
            lines.append("matrix:")
            lines.extend(self.matrix_rows)
        if self.data:
            lines.append("data:")
            lines.extend(f"{t} {y}" for t, y in self.data)
        return "\n".join(lines) + "\n"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_system_text(text: str) -> SystemFile:
    sf = SystemFile()
    section = None
    eq_texts: list[str] = []
    matrix_rows: list[str] = []
    data_rows: list[tuple[Rational, Rational]] = []
    for raw in text.splitlines():
        line = _strip_comment(raw).strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if sep and key in _SECTION_KEYS:
            rest = rest.strip()
            if key == "vars":
                sf.vars = tuple(rest.split())
                section = None
            elif key == "params":
                sf.params = tuple(rest.split())
                section = None
            elif key == "precision":
                sf.precision = int(rest)
                section = None
            elif key == "t0":
                sf.t0 = rational_from_decimal(rest)
                section = None
            elif key == "h":
                sf.h = int(rest)
                section = None
            else:
                section = key
                if rest:
                    raise ParseError(f"section {key!r} takes no inline value")
            continue
        if section == "eqs":
            eq_texts.append(line)
        elif section == "matrix":
            matrix_rows.append(line)
        elif section == "data":
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"data row needs two columns: {line!r}")
            data_rows.append((rational_from_decimal(parts[0]), rational_from_decimal(parts[1])))
        else:
            raise ParseError(f"line outside any section: {line!r}")
    sf.eq_texts = tuple(eq_texts)
    sf.matrix_rows = tuple(matrix_rows)
    sf.data = tuple(data_rows)
    if eq_texts:
        if not sf.vars:
            raise ParseError("eqs present but no vars declared")
        ring = sf.ring
        sf.eqs = tuple(parse_multipoly(t, ring) for t in eq_texts)
    return sf


def load_system(path: str) -> SystemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system_text(fh.read())
