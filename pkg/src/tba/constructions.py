"""Standard sources of table algebras: groups, association schemes, and the q-family."""

from __future__ import annotations

import itertools as it
from fractions import Fraction

from .algebra import validate
from .errors import NotAGroup, NotAScheme, ShapeMismatch


def check_group(table):
    """Raise :class:`NotAGroup` unless ``table`` is a Cayley table with identity 0."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAGroup("Cayley table must be a nonempty square")
    elems = range(n)
    for g in elems:
        for h in elems:
            if not 0 <= table[g][h] < n:
                raise NotAGroup(f"entry ({g},{h}) = {table[g][h]} out of range")
    for g in elems:
        if table[0][g] != g or table[g][0] != g:
            raise NotAGroup(f"0 is not a two-sided identity (fails at {g})")
    for g in elems:
        if not any(table[g][h] == 0 for h in elems):
            raise NotAGroup(f"element {g} has no inverse")
    for g, h, k in it.product(elems, repeat=3):
        if table[table[g][h]][k] != table[g][table[h][k]]:
            raise NotAGroup(f"not associative at ({g},{h},{k})")


def group_algebra(table, **kw):
    """Group algebra: degrees 1, ``lambda_{g,h,gh} = 1``, star = inversion."""
    check_group(table)
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == 0) for g in range(n)]
    lam = [(g, h, table[g][h], 1) for g in range(n) for h in range(n)]
    return validate(n, lam, inv, [1] * n, **kw)


def cyclic_table(n):
    return [[(g + h) % n for h in range(n)] for g in range(n)]


def klein_four_table():
    # elements 0=e, 1=a, 2=b, 3=ab encoded as bit pairs
    return [[g ^ h for h in range(4)] for g in range(4)]


def symmetric_table(n):
    """Cayley table of S_n, permutations in lexicographic order (identity first).

    The product ``g*h`` is the composition ``x -> g(h(x))``.
    """
    perms = list(it.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    return [
        [index[tuple(g[h[x]] for x in range(n))] for h in perms]
        for g in perms
    ]


def q_example(q):
    """The (q+2)-dimensional commutative algebra with ``r_i r_i = (q-1) r_0 + (q-2) r_i``.

    For ``i != j`` (both nonzero) ``r_i r_j`` is the sum of all ``r_k`` with
    ``k`` not in ``{0, i, j}``.  Every ``r_i`` is symmetric of degree ``q-1``.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    d = q + 2
    lam = []
    for i in range(d):
        lam.append((0, i, i, 1))
        if i:
            lam.append((i, 0, i, 1))
    for i in range(1, d):
        for j in range(1, d):
            if i == j:
                lam.append((i, i, 0, q - 1))
                if q > 2:
                    lam.append((i, i, i, q - 2))
            else:
                lam.extend((i, j, k, 1) for k in range(1, d) if k not in (i, j))
    return validate(d, lam, range(d), [1] + [q - 1] * (q + 1))


def scheme_algebra(relations, **kw):
    """Bose-Mesner algebra of an association scheme given as an ``n x n`` colour matrix.

    Colour 0 must appear exactly on the diagonal.  The structure constant
    ``lambda_{ijk}`` is the intersection number ``p^k_{ij}``; it is checked to
    be independent of the base pair ``(x, z)`` of colour ``k``.
    """
    n = len(relations)
    if n == 0 or any(len(row) != n for row in relations):
        raise ShapeMismatch("relation matrix must be a nonempty square")
    R = [list(map(int, row)) for row in relations]
    colours = sorted({c for row in R for c in row})
    d = colours[-1] + 1
    if colours != list(range(d)) or min(colours) < 0:
        raise NotAScheme(0, 0, 0, ("colours", "not 0..d-1"))
    for x in range(n):
        for y in range(n):
            if (R[x][y] == 0) != (x == y):
                raise ShapeMismatch(f"colour 0 must be exactly the diagonal (fails at {x},{y})")

    star = [None] * d
    for x in range(n):
        for y in range(n):
            c, t = R[x][y], R[y][x]
            if star[c] is None:
                star[c] = t
            elif star[c] != t:
                raise NotAScheme(c, c, 0, ("transpose colour", f"{star[c]} vs {t}"))

    p = {}
    for x in range(n):
        for z in range(n):
            k = R[x][z]
            counts = {}
            for y in range(n):
                key = (R[x][y], R[y][z])
                counts[key] = counts.get(key, 0) + 1
            for i in range(d):
                for j in range(d):
                    got = counts.get((i, j), 0)
                    seen = p.setdefault((i, j, k), got)
                    if seen != got:
                        raise NotAScheme(k, i, j, (seen, got))
    lam = {key: v for key, v in p.items() if v}
    degrees = [p[(i, star[i], 0)] for i in range(d)]
    return validate(d, lam, star, degrees, **kw)


def cycle_scheme(n):
    """Distance scheme of the n-cycle; the pentagon is ``cycle_scheme(5)``."""
    return [[min((x - y) % n, (y - x) % n) for y in range(n)] for x in range(n)]


def group_scheme(table):
    """Thin scheme of a group: colour of (x, y) is ``x^{-1} y``."""
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == 0) for g in range(n)]
    return [[table[inv[x]][y] for y in range(n)] for x in range(n)]


def tensor_product(A, B):
    """Direct product ``A (x) B``; basis pair ``(a, b)`` has index ``a * B.dim + b``."""
    dA, dB = A.dim, B.dim
    lam = {}
    for a1, a2, a3, v in A.entries():
        for b1, b2, b3, w in B.entries():
            lam[(a1 * dB + b1, a2 * dB + b2, a3 * dB + b3)] = v * w
    star = [A.star[a] * dB + B.star[b] for a in range(dA) for b in range(dB)]
    degrees = [Fraction(A.degrees[a]) * B.degrees[b] for a in range(dA) for b in range(dB)]
    return validate(dA * dB, lam, star, degrees)


def corpus():
    """Named small algebras used by the test and acceptance suites."""
    return {
        "Z2": group_algebra(cyclic_table(2)),
        "klein4": group_algebra(klein_four_table()),
        "S3": group_algebra(symmetric_table(3)),
        "Z4": group_algebra(cyclic_table(4)),
        "pentagon": scheme_algebra(cycle_scheme(5)),
        **{f"q{q}": q_example(q) for q in (2, 3, 4, 5)},
    }
