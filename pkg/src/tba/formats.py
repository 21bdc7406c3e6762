"""Line-oriented text formats for table algebras, schemes and groups.

Three formats are recognised by their first non-comment line:

``tba 1``
    native structure constants: ``dim d``, ``degrees ...``, ``involution ...``
    and sparse ``lambda a b c p/q`` lines (omitted triples are zero).
``scheme``
    point count ``n`` followed by an ``n x n`` relation (colour) matrix.
``group``
    order ``n`` followed by an ``n x n`` Cayley table, identity 0.

``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .algebra import validate
from .constructions import group_algebra, scheme_algebra
from .errors import ParseError


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(tok, lineno):
    try:
        if "/" in tok:
            p, q = tok.split("/")
            if int(q) <= 0:
                raise ValueError
            return Fraction(int(p), int(q))
        return Fraction(int(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"not a rational: {tok!r}")


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"not an integer: {tok!r}")


def _lines(text):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def loads_native(text, **kw):
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["tba", "1"]:
        raise ParseError(lines[0][0] if lines else 1, "expected header 'tba 1'")
    dim = degrees = star = None
    lam = {}
    for n, toks in lines[1:]:
        key, rest = toks[0], toks[1:]
        if key == "dim":
            if len(rest) != 1 or dim is not None:
                raise ParseError(n, "expected a single 'dim d' line")
            dim = _int(rest[0], n)
            if dim < 1:
                raise ParseError(n, "dim must be positive")
        elif key == "degrees":
            degrees = [_rational(t, n) for t in rest]
        elif key == "involution":
            star = [_int(t, n) for t in rest]
        elif key == "lambda":
            if len(rest) != 4:
                raise ParseError(n, "expected 'lambda a b c value'")
            a, b, c = (_int(t, n) for t in rest[:3])
            if (a, b, c) in lam:
                raise ParseError(n, f"duplicate lambda {a} {b} {c}")
            if dim is not None and not all(0 <= i < dim for i in (a, b, c)):
                raise ParseError(n, f"index out of range for dim {dim}")
            lam[(a, b, c)] = _rational(rest[3], n)
        else:
            raise ParseError(n, f"unknown keyword {key!r}")
    for name, val in (("dim", dim), ("degrees", degrees), ("involution", star)):
        if val is None:
            raise ParseError(lines[-1][0], f"missing '{name}' line")
    if len(degrees) != dim or len(star) != dim:
        raise ParseError(lines[-1][0], "degrees and involution must have dim entries")
    return validate(dim, lam, star, degrees, **kw)


def _square_block(lines, header):
    if not lines or lines[0][1] != [header]:
        raise ParseError(lines[0][0] if lines else 1, f"expected header {header!r}")
    if len(lines) < 2 or len(lines[1][1]) != 1:
        raise ParseError(lines[1][0] if len(lines) > 1 else 1, "expected the size n")
    size = _int(lines[1][1][0], lines[1][0])
    body = lines[2:]
    if len(body) != size:
        raise ParseError(body[-1][0] if body else lines[1][0], f"expected {size} rows, found {len(body)}")
    rows = []
    for n, toks in body:
        if len(toks) != size:
            raise ParseError(n, f"expected {size} entries, found {len(toks)}")
        rows.append([_int(t, n) for t in toks])
    return rows


def loads_scheme(text, **kw):
    return scheme_algebra(_square_block(list(_lines(text)), "scheme"), **kw)


def loads_group(text, **kw):
    return group_algebra(_square_block(list(_lines(text)), "group"), **kw)


def loads(text, **kw):
    """Parse any of the three formats, dispatching on the header."""
    first = next(_lines(text), (1, []))
    kind = first[1][0] if first[1] else ""
    if kind == "tba":
        return loads_native(text, **kw)
    if kind == "scheme":
        return loads_scheme(text, **kw)
    if kind == "group":
        return loads_group(text, **kw)
    raise ParseError(first[0], f"unrecognised header {' '.join(first[1])!r}")


def parse_native(path, **kw):
    return loads_native(Path(path).read_text(), **kw)


def parse_scheme(path, **kw):
    return loads_scheme(Path(path).read_text(), **kw)


def parse_group(path, **kw):
    return loads_group(Path(path).read_text(), **kw)


def load(path, **kw):
    return loads(Path(path).read_text(), **kw)


def dumps_native(A, comment=None):
    out = ["tba 1"]
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"dim {A.dim}")
    out.append("degrees " + " ".join(format_rational(x) for x in A.degrees))
    out.append("involution " + " ".join(str(s) for s in A.star))
    out.extend(f"lambda {a} {b} {c} {format_rational(v)}" for a, b, c, v in A.entries())
    return "\n".join(out) + "\n"


def write_native(A, path, comment=None):
    Path(path).write_text(dumps_native(A, comment))


def dumps_square(header, rows):
    out = [header, str(len(rows))]
    out.extend(" ".join(str(x) for x in row) for row in rows)
    return "\n".join(out) + "\n"
