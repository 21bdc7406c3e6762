"""Table algebras given by exact structure constants.

A table algebra of dimension ``d`` is stored as a sparse map
``(a, b) -> {c: lambda_abc}`` of nonnegative :class:`~fractions.Fraction`
values together with the involution (a permutation of basis indices) and the
degree vector.  Basis index 0 is always the identity.

Build instances with :func:`validate`; the constructor does no checking.
"""

from __future__ import annotations

import itertools as it
import random
from collections import namedtuple
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import AlgebraMismatch, AxiomViolation, ShapeMismatch

__all__ = [
    "TableAlgebra",
    "AlgebraElement",
    "Violation",
    "validate",
    "check_axioms",
    "multiply",
    "star_element",
    "degree_of",
    "support",
    "regular_matrix",
]

# Exhaustive associativity check up to this dimension; sampled above it.
EXHAUSTIVE_ASSOC_DIM = 12
ASSOC_SAMPLES = 1000

Violation = namedtuple("Violation", "axiom indices found expected")
Violation.__doc__ = """One failed axiom instance.

``axiom`` is one of ``"I"``, ``"II"``, ``"III"``, ``"IV"``, ``"unit"`` or
``"assoc"``; ``indices`` is the offending index tuple.
"""


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


class TableAlgebra:
    """An algebra ``(A, B)`` with distinguished basis ``b_0 = 1, ..., b_{d-1}``."""

    __slots__ = ("_dim", "_rows", "_star", "_degrees", "__dict__")

    def __init__(self, dim, rows, star, degrees):
        self._dim = dim
        self._rows = rows
        self._star = tuple(star)
        self._degrees = tuple(degrees)

    @property
    def dim(self):
        return self._dim

    @property
    def star(self):
        return self._star

    @property
    def degrees(self):
        return self._degrees

    def lam(self, a, b, c):
        return self._rows.get((a, b), {}).get(c, Fraction(0))

    def row(self, a, b):
        """Nonzero coefficients of ``b_a * b_b`` as a fresh dict."""
        return dict(self._rows.get((a, b), {}))

    def entries(self):
        """Sorted list of nonzero ``(a, b, c, lambda_abc)``."""
        out = []
        for (a, b), row in self._rows.items():
            for c, v in row.items():
                out.append((a, b, c, v))
        out.sort(key=lambda t: t[:3])
        return out

    @property
    def total_degree(self):
        """``|B+|``, the sum of all basis degrees."""
        return sum(self._degrees, Fraction(0))

    @property
    def is_commutative(self):
        return all(
            self._rows.get((a, b), {}) == self._rows.get((b, a), {})
            for a, b in it.combinations(range(self._dim), 2)
        )

    def basis(self, i):
        coeffs = [Fraction(0)] * self._dim
        coeffs[i] = Fraction(1)
        return AlgebraElement(self, coeffs)

    @property
    def one(self):
        return self.basis(0)

    def element(self, coeffs):
        if len(coeffs) != self._dim:
            raise ShapeMismatch(f"expected {self._dim} coefficients, got {len(coeffs)}")
        return AlgebraElement(self, [_frac(c) for c in coeffs])

    def sum_of(self, indices):
        """The element ``sum_{i in indices} b_i`` (the ``S+`` of a subset)."""
        coeffs = [Fraction(0)] * self._dim
        for i in indices:
            coeffs[i] += 1
        return AlgebraElement(self, coeffs)

    @cached_property
    def dense(self):
        """Float tensor ``T[a, b, c] = lambda_abc``."""
        d = self._dim
        t = np.zeros((d, d, d))
        for (a, b), row in self._rows.items():
            for c, v in row.items():
                t[a, b, c] = float(v)
        t.flags.writeable = False
        return t

    @cached_property
    def float_degrees(self):
        v = np.array([float(x) for x in self._degrees])
        v.flags.writeable = False
        return v

    def __eq__(self, other):
        if not isinstance(other, TableAlgebra):
            return NotImplemented
        return (
            self._dim == other._dim
            and self._star == other._star
            and self._degrees == other._degrees
            and self.entries() == other.entries()
        )

    def __hash__(self):
        return hash((self._dim, self._star, self._degrees))

    def __repr__(self):
        return f"TableAlgebra(dim={self._dim}, degrees={[str(x) for x in self._degrees]})"


class AlgebraElement:
    """An element ``sum_b x_b b`` with exact rational coefficients."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs):
        self.parent = parent
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.parent is not self.parent and other.parent != self.parent:
            raise AlgebraMismatch("elements belong to different algebras")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return AlgebraElement(self.parent, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return AlgebraElement(self.parent, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return AlgebraElement(self.parent, [-x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        s = _frac(other)
        return AlgebraElement(self.parent, [s * x for x in self.coeffs])

    def __rmul__(self, other):
        s = _frac(other)
        return AlgebraElement(self.parent, [s * x for x in self.coeffs])

    def __truediv__(self, other):
        s = _frac(other)
        return AlgebraElement(self.parent, [x / s for x in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.parent == other.parent and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*b{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    def star(self):
        return star_element(self)

    def degree(self):
        return degree_of(self)

    def support(self):
        return support(self)


def multiply(x, y):
    """Bilinear product of two elements."""
    if x.parent is not y.parent and x.parent != y.parent:
        raise AlgebraMismatch("elements belong to different algebras")
    A = x.parent
    acc = [Fraction(0)] * A.dim
    rows = A._rows
    for a, xa in enumerate(x.coeffs):
        if not xa:
            continue
        for b, yb in enumerate(y.coeffs):
            if not yb:
                continue
            s = xa * yb
            for c, v in rows.get((a, b), {}).items():
                acc[c] += s * v
    return AlgebraElement(A, acc)


def star_element(x):
    # rational coefficients: complex conjugation is trivial
    A = x.parent
    out = [Fraction(0)] * A.dim
    for b, xb in enumerate(x.coeffs):
        out[A.star[b]] = xb
    return AlgebraElement(A, out)


def degree_of(x):
    return sum((c * d for c, d in zip(x.coeffs, x.parent.degrees)), Fraction(0))


def support(x):
    return frozenset(i for i, c in enumerate(x.coeffs) if c)


def regular_matrix(x):
    """Left-multiplication matrix: ``M[c][b]`` is the ``b_c`` coefficient of ``x * b_b``."""
    A = x.parent
    d = A.dim
    M = [[Fraction(0)] * d for _ in range(d)]
    for a, xa in enumerate(x.coeffs):
        if not xa:
            continue
        for b in range(d):
            for c, v in A._rows.get((a, b), {}).items():
                M[c][b] += xa * v
    return M


# -- construction and validation ---------------------------------------------

def _coerce_rows(dim, lam):
    """Accept a dense nested list, a dict, or an iterable of (a, b, c, v)."""
    rows = {}

    def put(a, b, c, v):
        for idx in (a, b, c):
            if not (isinstance(idx, (int, np.integer)) and 0 <= idx < dim):
                raise ShapeMismatch(f"structure constant index {(a, b, c)} out of range for dim {dim}")
        v = _frac(v)
        if v:
            rows.setdefault((int(a), int(b)), {})[int(c)] = v

    if isinstance(lam, dict):
        for key, v in lam.items():
            if len(key) != 3:
                raise ShapeMismatch(f"bad structure constant key {key!r}")
            put(*key, v)
    elif isinstance(lam, np.ndarray) or (
        isinstance(lam, (list, tuple)) and lam and isinstance(lam[0], (list, tuple, np.ndarray))
        and lam[0] and isinstance(lam[0][0], (list, tuple, np.ndarray))
    ):
        if len(lam) != dim or any(len(r) != dim or any(len(s) != dim for s in r) for r in lam):
            raise ShapeMismatch(f"dense structure constants must be {dim}x{dim}x{dim}")
        for a in range(dim):
            for b in range(dim):
                for c in range(dim):
                    put(a, b, c, lam[a][b][c])
    else:
        for entry in lam:
            if len(entry) != 4:
                raise ShapeMismatch(f"bad structure constant entry {entry!r}")
            a, b, c, v = entry
            if (int(a), int(b)) in rows and int(c) in rows[(int(a), int(b))]:
                raise ShapeMismatch(f"duplicate structure constant {(a, b, c)}")
            put(a, b, c, v)
    return rows


def _assoc_triples(dim, strict, seed):
    if strict or dim <= EXHAUSTIVE_ASSOC_DIM:
        return it.product(range(dim), repeat=3)
    rng = random.Random(seed)
    return [tuple(rng.randrange(dim) for _ in range(3)) for _ in range(ASSOC_SAMPLES)]


def check_axioms(A, *, strict=False, seed=0):
    """Return every axiom violation of ``A`` (empty list if it is a table algebra)."""
    d = A.dim
    star = A.star
    deg = A.degrees
    zero = Fraction(0)
    out = []

    # involution: checked first since later axioms index through it
    if sorted(star) != list(range(d)):
        out.append(Violation("II", tuple(range(d)), tuple(star), "a permutation"))
        return out
    if star[0] != 0:
        out.append(Violation("II", (0,), star[0], 0))
    for a in range(d):
        if star[star[a]] != a:
            out.append(Violation("II", (a,), star[star[a]], a))
    if deg[0] != 1:
        out.append(Violation("IV", (0,), deg[0], Fraction(1)))
    for a in range(d):
        if deg[a] <= 0:
            out.append(Violation("III", (a,), deg[a], "positive"))

    for a, b, c, v in A.entries():
        if v < 0:
            out.append(Violation("I", (a, b, c), v, "nonnegative"))
        w = A.lam(star[b], star[a], star[c])
        if w != v:
            out.append(Violation("II", (a, b, c), w, v))
    # entries() only lists nonzero values; the mirrored zero case is covered
    # because the mirror of a nonzero entry is itself visited.

    for a in range(d):
        for b in range(d):
            found = A.lam(a, b, 0)
            expected = A.lam(a, star[a], 0) if b == star[a] else zero
            if b == star[a]:
                # the degree is read off lambda_{a a* 1}, not trusted from input
                if found != deg[a]:
                    out.append(Violation("III", (a, b, 0), found, deg[a]))
            elif found != expected:
                out.append(Violation("III", (a, b, 0), found, expected))

    for b in range(d):
        if A.row(0, b) != {b: Fraction(1)}:
            out.append(Violation("unit", (0, b), A.row(0, b), {b: Fraction(1)}))
        if A.row(b, 0) != {b: Fraction(1)}:
            out.append(Violation("unit", (b, 0), A.row(b, 0), {b: Fraction(1)}))

    for a in range(d):
        if deg[a] != deg[star[a]]:
            out.append(Violation("IV", (a,), deg[star[a]], deg[a]))
        for b in range(d):
            got = sum((v * deg[c] for c, v in A._rows.get((a, b), {}).items()), zero)
            if got != deg[a] * deg[b]:
                out.append(Violation("IV", (a, b), got, deg[a] * deg[b]))

    basis = [A.basis(i) for i in range(d)]
    for a, b, c in _assoc_triples(d, strict, seed):
        left = multiply(multiply(basis[a], basis[b]), basis[c])
        right = multiply(basis[a], multiply(basis[b], basis[c]))
        if left != right:
            out.append(Violation("assoc", (a, b, c), left.coeffs, right.coeffs))
    return out


def validate(dim, lam, star, degrees=None, *, strict=False, seed=0):
    """Build a :class:`TableAlgebra` and check axioms I-IV, unit and associativity.

    ``degrees`` may be omitted, in which case they are read off
    ``lambda_{a, a*, 0}``.  Raises :class:`AxiomViolation` listing every
    failure.
    """
    if not isinstance(dim, int) or dim < 1:
        raise ShapeMismatch(f"dimension must be a positive integer, got {dim!r}")
    star = tuple(int(s) for s in star)
    if len(star) != dim:
        raise ShapeMismatch(f"involution has length {len(star)}, expected {dim}")
    if any(not 0 <= s < dim for s in star):
        raise ShapeMismatch("involution entry out of range")
    rows = _coerce_rows(dim, lam)
    if degrees is None:
        degrees = [rows.get((a, star[a]), {}).get(0, Fraction(0)) for a in range(dim)]
    degrees = tuple(_frac(x) for x in degrees)
    if len(degrees) != dim:
        raise ShapeMismatch(f"degree vector has length {len(degrees)}, expected {dim}")
    A = TableAlgebra(dim, rows, star, degrees)
    violations = check_axioms(A, strict=strict, seed=seed)
    if violations:
        raise AxiomViolation(violations)
    return A
