"""Closed subsets, double cosets and quotient table algebras.

Everything here is exact rational arithmetic; there are no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .algebra import multiply, support, validate
from .errors import (
    AlphaIdentityFailed,
    InternalInconsistency,
    NotClosed,
    RepresentativeDependence,
    SizeLimitExceeded,
    TheoremGrViolation,
)

DEFAULT_ENUM_CAP = 10**6


def _product_support(A, E, D):
    """``ED``: union of ``Supp(e d)`` over ``e in E``, ``d in D``."""
    out = set()
    for e in E:
        for d in D:
            out.update(A._rows.get((e, d), {}))
    return out


def _is_closed(A, indices):
    starred = {A.star[i] for i in indices}
    return 0 in indices and _product_support(A, starred, indices) <= set(indices)


class ClosedSubset:
    """A closed subset ``C`` of the basis: ``0 in C`` and ``C* C`` is inside ``C``."""

    def __init__(self, parent, indices):
        idx = tuple(sorted(set(int(i) for i in indices)))
        if not _is_closed(parent, idx):
            raise NotClosed(f"{list(idx)} is not a closed subset")
        self.parent = parent
        self.indices = idx

    def __contains__(self, i):
        return i in self._set

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        if not isinstance(other, ClosedSubset):
            return NotImplemented
        return self.indices == other.indices and self.parent == other.parent

    def __hash__(self):
        return hash(self.indices)

    def __repr__(self):
        return f"ClosedSubset({list(self.indices)})"

    @cached_property
    def _set(self):
        return frozenset(self.indices)

    @cached_property
    def plus(self):
        """The element ``C+``."""
        return self.parent.sum_of(self.indices)

    @cached_property
    def size(self):
        """``|C+|``, the sum of degrees over ``C``."""
        return sum((self.parent.degrees[i] for i in self.indices), Fraction(0))

    @cached_property
    def idempotent(self):
        """``e = |C+|^{-1} C+``."""
        return self.plus / self.size

    @cached_property
    def normal(self):
        return is_normal(self)

    @cached_property
    def strongly_normal(self):
        return is_strongly_normal(self)


def closure(A, S):
    """Smallest closed subset containing the index set ``S``."""
    T = set(S) | {0}
    while True:
        grown = T | _product_support(A, {A.star[i] for i in T}, T)
        if grown == T:
            return ClosedSubset(A, T)
        T = grown


def enumerate_closed_subsets(A, cap=DEFAULT_ENUM_CAP):
    """All closed subsets, sorted by size then lexicographically.

    Starts from the closures of singletons and saturates under closure of
    pairwise unions.
    """
    found = {closure(A, {i}).indices for i in range(A.dim)}
    frontier = set(found)
    while frontier:
        new = set()
        for s in frontier:
            for t in found:
                u = closure(A, set(s) | set(t)).indices
                if u not in found and u not in new:
                    new.add(u)
                    if len(found) + len(new) > cap:
                        raise SizeLimitExceeded(f"more than {cap} closed subsets")
        found |= new
        frontier = new
    return [ClosedSubset(A, s) for s in sorted(found, key=lambda s: (len(s), s))]


def is_normal(C):
    """``bC = Cb`` for every basis element, cross-checked against centrality of ``e``."""
    A = C.parent
    Cp = C.plus
    by_support = True
    central = True
    for b in range(A.dim):
        bb = A.basis(b)
        left = multiply(Cp, bb)
        right = multiply(bb, Cp)
        if support(left) != support(right):
            by_support = False
        if left != right:
            central = False
    if by_support != central:
        raise InternalInconsistency(
            f"normality of {list(C.indices)} by supports ({by_support}) "
            f"disagrees with centrality of e ({central})"
        )
    return by_support


def idempotent_is_central(C):
    A = C.parent
    e = C.idempotent
    return all(multiply(e, A.basis(b)) == multiply(A.basis(b), e) for b in range(A.dim))


def is_strongly_normal(C):
    """``b* C b`` lies inside ``C`` for every basis element ``b``."""
    A = C.parent
    Cp = C.plus
    for b in range(A.dim):
        x = multiply(multiply(A.basis(A.star[b]), Cp), A.basis(b))
        if not support(x) <= C._set:
            return False
    return True


def double_cosets(C):
    """Partition of the basis into blocks ``CbC``, ordered by smallest member."""
    A = C.parent
    Cp = C.plus
    blocks = []
    seen = set()
    for b in range(A.dim):
        if b in seen:
            continue
        block = support(multiply(multiply(Cp, A.basis(b)), Cp))
        if b not in block or block & seen:
            raise InternalInconsistency(f"double cosets do not partition the basis at {b}")
        seen |= block
        blocks.append(tuple(sorted(block)))
    return blocks


def alpha(C, b):
    """Scalar ``alpha_b`` with ``C+ b = alpha_b (Cb)+``, checked exactly."""
    A = C.parent
    lhs = multiply(C.plus, A.basis(b))
    Cb = support(lhs)
    Cb_plus = A.sum_of(Cb)
    a = C.size * A.degrees[b] / Cb_plus.degree()
    if lhs != a * Cb_plus:
        raise AlphaIdentityFailed(
            f"C+ b_{b} is not a multiple of (C b_{b})+ for C = {list(C.indices)}"
        )
    return a


@dataclass(frozen=True)
class QuotientPresentation:
    """Quotient of ``A`` by a closed subset, with the data to move between them."""

    closed: ClosedSubset
    cosets: tuple
    reps: tuple
    coset_of: tuple
    quotient: object
    alphas: tuple | None = field(default=None)

    def is_group_algebra(self):
        """All degrees 1 and every product of basis elements is a single basis element."""
        Q = self.quotient
        if any(x != 1 for x in Q.degrees):
            return False
        for i in range(Q.dim):
            for j in range(Q.dim):
                row = Q.row(i, j)
                if len(row) != 1 or next(iter(row.values())) != 1:
                    return False
        return True


def _gamma(A, cosets, i, j, t, scale):
    total = Fraction(0)
    for r in cosets[i]:
        for s in cosets[j]:
            total += A.lam(r, s, t)
    return total / scale


def quotient(C, *, check_all_reps=True):
    """Quotient table algebra ``A/C`` on the double cosets.

    The structure constant ``gamma_ijk`` sums ``lambda_{rst}`` over ``r`` in
    coset ``i`` and ``s`` in coset ``j`` for a fixed ``t`` in coset ``k``,
    divided by ``|C+|``.  With ``check_all_reps`` every ``t`` is tried and
    any disagreement raises :class:`RepresentativeDependence`.
    """
    A = C.parent
    cosets = tuple(double_cosets(C))
    reps = tuple(block[0] for block in cosets)
    coset_of = [None] * A.dim
    for k, block in enumerate(cosets):
        for x in block:
            coset_of[x] = k
    m = len(cosets)
    lam = {}
    for i in range(m):
        for j in range(m):
            for k in range(m):
                g = _gamma(A, cosets, i, j, reps[k], C.size)
                if check_all_reps:
                    for t in cosets[k][1:]:
                        other = _gamma(A, cosets, i, j, t, C.size)
                        if other != g:
                            raise RepresentativeDependence(
                                f"gamma[{i},{j},{k}] is {g} at t={reps[k]} but {other} at t={t}"
                            )
                if g:
                    lam[(i, j, k)] = g
    star = [coset_of[A.star[r]] for r in reps]
    degrees = [sum((A.degrees[x] for x in block), Fraction(0)) / C.size for block in cosets]
    Q = validate(m, lam, star, degrees)
    alphas = None
    if C.normal:
        alphas = tuple(alpha(C, b) for b in range(A.dim))
    return QuotientPresentation(C, cosets, reps, tuple(coset_of), Q, alphas)


def quotient_degree_one_set(C, presentation=None):
    """Basis elements with ``|b/C| = 1``, checked against ``b* C b`` inside ``C``."""
    A = C.parent
    pres = presentation or quotient(C)
    by_degree = {b for b in range(A.dim) if pres.quotient.degrees[pres.coset_of[b]] == 1}
    by_support = set()
    for b in range(A.dim):
        x = multiply(multiply(A.basis(A.star[b]), C.plus), A.basis(b))
        if support(x) <= C._set:
            by_support.add(b)
    if by_degree != by_support:
        raise TheoremGrViolation(
            f"|b/C| = 1 on {sorted(by_degree)} but b*Cb inside C on {sorted(by_support)}"
        )
    return frozenset(by_degree)
