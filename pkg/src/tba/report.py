"""Plain-text and TSV rendering of CLI reports."""

from __future__ import annotations

from fractions import Fraction
from numbers import Complex, Integral

import numpy as np

from .formats import format_rational

ZERO_TOL = 1e-12


def format_number(x):
    """Exact rationals as ``p/q``; floats and complex values to 10 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, Integral):
        return str(int(x))
    if isinstance(x, Complex):
        z = complex(x)
        re = 0.0 if abs(z.real) < ZERO_TOL else z.real
        im = 0.0 if abs(z.imag) < ZERO_TOL else z.imag
        if im == 0.0:
            return _g(re)
        if re == 0.0:
            return f"{_g(im)}i"
        sign = "+" if im > 0 else "-"
        return f"{_g(re)}{sign}{_g(abs(im))}i"
    return str(x)


def _g(v):
    s = f"{v:.10g}"
    return "0" if s == "-0" else s


class Report:
    def __init__(self, title):
        self.title = title
        self.summary = []
        self.tables = []

    def add(self, key, value):
        self.summary.append((key, value))

    def table(self, name, header, rows):
        self.tables.append((name, list(header), [list(r) for r in rows]))

    def render(self, fmt="human"):
        if fmt == "tsv":
            return self._tsv()
        return self._human()

    def _cell(self, v):
        if isinstance(v, str):
            return v
        if isinstance(v, (list, tuple, set, frozenset)):
            return ",".join(self._cell(x) for x in v)
        return format_number(v)

    def _tsv(self):
        out = ["#summary", "key\tvalue"]
        out.extend(f"{k}\t{self._cell(v)}" for k, v in self.summary)
        for name, header, rows in self.tables:
            out.append(f"#{name}")
            out.append("\t".join(header))
            out.extend("\t".join(self._cell(c) for c in row) for row in rows)
        return "\n".join(out) + "\n"

    def _human(self):
        out = [self.title]
        width = max((len(k) for k, _ in self.summary), default=0)
        out.extend(f"  {k.ljust(width)}  {self._cell(v)}" for k, v in self.summary)
        for name, header, rows in self.tables:
            cells = [header] + [[self._cell(c) for c in row] for row in rows]
            widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
            out.append("")
            out.append(f"{name}:")
            for r in cells:
                out.append("  " + "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())
        return "\n".join(out) + "\n"
