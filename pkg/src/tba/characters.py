"""Irreducible characters of a table algebra and the operations built on them.

The character table is computed by splitting the center: a random rational
central element ``z`` acts on ``Z(A)`` with distinct eigenvalues (one per
Wedderburn block), its eigenvectors are multiples of the primitive central
idempotents ``e_i``, and ``chi_i(b) = tr(L_b L_{e_i}) / n_i`` where
``n_i^2 = tr(L_{e_i})``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import multiply
from .errors import (
    CrossCheckMismatch,
    EmbeddingMismatch,
    InternalInconsistency,
    KernelNotClosed,
    NotClosed,
    NotNormal,
    SplittingFailed,
    ToleranceBreach,
)
from .subsets import ClosedSubset, quotient

DEFAULT_TOL = 1e-8
INTEGER_TOL = 1e-6
MATCH_TOL = 1e-6
MAX_RETRIES = 8
# Character values this close to an integer are snapped onto it.
SNAP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Complex values on the basis of ``parent``; not necessarily a character."""

    parent: object
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __getitem__(self, b):
        return self.values[b]

    def __len__(self):
        return len(self.values)

    def __add__(self, other):
        return ClassFunction(self.parent, self.values + _values(other))


@dataclass(frozen=True, eq=False)
class Character(ClassFunction):
    irreducible: bool = False

    @property
    def block_degree(self):
        return self.values[0].real

    def __add__(self, other):
        if isinstance(other, Character):
            return Character(self.parent, self.values + other.values, irreducible=False)
        return super().__add__(other)


def _values(phi):
    if isinstance(phi, ClassFunction):
        return phi.values
    return np.asarray(phi, dtype=complex)


def _snap(v):
    v = np.array(v, dtype=complex)
    re, im = v.real.copy(), v.imag.copy()
    for part in (re, im):
        near = np.round(part)
        close = np.abs(part - near) <= SNAP_TOL * np.maximum(1.0, np.abs(part))
        part[close] = near[close]
    im[im == 0] = 0.0  # drops negative zero
    re[re == 0] = 0.0
    return re + 1j * im


def degree_character(A):
    """The degree map ``b -> |b|`` as a (linear, irreducible) character."""
    return Character(A, A.float_degrees.astype(complex), irreducible=True)


# -- the center ---------------------------------------------------------------

def _nullspace(rows, ncols):
    """Exact nullspace basis of a sparse rational matrix, plus its free columns.

    ``rows`` is an iterable of ``{column: Fraction}`` dicts.
    """
    reduced = {}  # pivot column -> row normalised to 1 at the pivot
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        for pc, prow in reduced.items():
            f = row.get(pc)
            if f:
                for c, v in prow.items():
                    x = row.get(c, 0) - f * v
                    if x:
                        row[c] = x
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        p = row[pc]
        row = {c: v / p for c, v in row.items()}
        for other in reduced.values():
            f = other.get(pc)
            if f:
                for c, v in row.items():
                    x = other.get(c, 0) - f * v
                    if x:
                        other[c] = x
                    else:
                        other.pop(c, None)
        reduced[pc] = row
    free = [c for c in range(ncols) if c not in reduced]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc, prow in reduced.items():
            v[pc] = -prow.get(f, Fraction(0))
        basis.append(v)
    return basis, free


def center_basis(A):
    """Exact basis of ``Z(A)`` and the coordinate columns that read it off.

    Each basis vector is 1 on its own free column and 0 on the others, so the
    coordinates of a central element are its coefficients at ``free``.
    """
    d = A.dim
    if A.is_commutative:
        return [A.basis(i).coeffs for i in range(d)], list(range(d))
    # x b_i = b_i x  <=>  sum_a x_a (lambda_{a i c} - lambda_{i a c}) = 0 for all i, c
    rows = {}
    for a, b, c, v in A.entries():
        rows.setdefault((b, c), {})
        rows[(b, c)][a] = rows[(b, c)].get(a, 0) + v
        rows.setdefault((a, c), {})
        rows[(a, c)][b] = rows[(a, c)].get(b, 0) - v
    unique = {frozenset((k, v) for k, v in r.items() if v) for r in rows.values()}
    basis, free = _nullspace((dict(r) for r in sorted(unique, key=sorted)), d)
    return [tuple(v) for v in basis], free


# -- the table ----------------------------------------------------------------

@dataclass
class CharacterTable:
    algebra: object
    irreducibles: tuple
    block_dims: tuple
    multiplicities: tuple
    idempotents: tuple
    tol: float
    seed: int
    residuals: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i):
        return self.irreducibles[i]

    def __iter__(self):
        return iter(self.irreducibles)

    @property
    def matrix(self):
        return np.array([chi.values for chi in self.irreducibles])

    def index_of(self, phi, tol=MATCH_TOL):
        """Index of the irreducible equal to ``phi`` in max-norm, or ``None``."""
        v = _values(phi)
        for i, chi in enumerate(self.irreducibles):
            if np.max(np.abs(chi.values - v)) < tol:
                return i
        return None

    @property
    def degree_index(self):
        return self.index_of(degree_character(self.algebra))


def _trace_tensors(A):
    T = A.dense
    # L_a[c, x] = lambda_{a x c}
    tr = np.einsum("axx->a", T)
    pair = np.einsum("bcx,axc->ba", T, T)
    return tr, pair


def _square(A, u):
    return np.einsum("a,b,abc->c", u, u, A.dense)


def _canonical_key(chi):
    vals = tuple((round(float(x.real), 8) + 0.0, round(float(x.imag), 8) + 0.0) for x in chi.values)
    return (round(chi.block_degree), vals)


def _split(A, zbasis, free, coeffs, tol):
    """One splitting attempt; returns (idempotents, dims, residual dict) or None."""
    d = A.dim
    r = len(zbasis)
    z = A.element([sum(c * v[a] for c, v in zip(coeffs, zbasis)) for a in range(d)])
    M = np.zeros((r, r))
    for j, v in enumerate(zbasis):
        prod = multiply(z, A.element(v)).coeffs
        M[:, j] = [float(prod[f]) for f in free]
    w, V = np.linalg.eig(M)
    scale = max(1.0, float(np.max(np.abs(w))))
    if r > 1:
        gaps = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(gaps, np.inf)
        if np.min(gaps) <= tol * scale:
            return None
    Zf = np.array([[float(x) for x in v] for v in zbasis]).T
    tr, _ = _trace_tensors(A)
    idems, dims = [], []
    worst_idem = 0.0
    worst_int = 0.0
    for i in range(r):
        u = Zf @ V[:, i]
        u2 = _square(A, u)
        c = np.vdot(u, u2) / np.vdot(u, u)
        e = u / c
        err = float(np.max(np.abs(_square(A, e) - e)))
        worst_idem = max(worst_idem, err / max(1.0, float(np.max(np.abs(e)))))
        nsq = complex(tr @ e)
        n = round(math.sqrt(max(nsq.real, 0.0)))
        worst_int = max(worst_int, abs(nsq - n * n) / max(1.0, n * n))
        idems.append(e)
        dims.append(n)
    if worst_idem >= tol or worst_int >= tol or min(dims) < 1:
        return None
    return idems, dims, {"idempotent": worst_idem, "block_dim": worst_int}


def character_table(A, tol=DEFAULT_TOL, seed=0):
    """Irreducible characters of ``A`` in canonical order.

    Order is by block degree, then lexicographically by values rounded to 8
    decimals (real part before imaginary part).  Splitting is retried with a
    fresh random central element up to 8 times.
    """
    zbasis, free = center_basis(A)
    rng = random.Random(seed)
    attempt = None
    for _ in range(MAX_RETRIES):
        coeffs = [rng.randint(1, 1000) for _ in zbasis]
        attempt = _split(A, zbasis, free, coeffs, tol)
        if attempt is not None:
            break
    if attempt is None:
        raise SplittingFailed(f"no splitting central element found in {MAX_RETRIES} tries")
    idems, dims, residuals = attempt

    _, pair = _trace_tensors(A)
    chars = []
    for e, n in zip(idems, dims):
        chars.append((Character(A, _snap(pair @ e / n), irreducible=True), n, e))
    chars.sort(key=lambda t: _canonical_key(t[0]))
    irr = tuple(c for c, _, _ in chars)
    dims = tuple(n for _, n, _ in chars)
    idems = tuple(e for _, _, e in chars)

    gram = np.array([[dual_form(x, y) for y in irr] for x in irr])
    off = gram - np.diag(np.diag(gram))
    diag = np.diag(gram)
    residuals["gram_offdiag"] = float(np.max(np.abs(off))) if len(irr) > 1 else 0.0
    residuals["gram_diag_imag"] = float(np.max(np.abs(diag.imag)))
    trL = np.einsum("axx->a", A.dense)
    regular = sum(n * chi.values for chi, n in zip(irr, dims))
    residuals["regular_trace"] = float(np.max(np.abs(regular - trL)))
    residuals["wedderburn"] = abs(sum(n * n for n in dims) - A.dim)

    if residuals["wedderburn"]:
        raise InternalInconsistency(f"block dimensions {dims} do not square-sum to {A.dim}")
    for key in ("gram_offdiag", "gram_diag_imag", "regular_trace"):
        if residuals[key] >= tol:
            raise ToleranceBreach(key, residuals[key], tol)
    if np.min(diag.real) <= tol:
        raise ToleranceBreach("dual form not positive on an irreducible", float(np.min(diag.real)), tol)

    return CharacterTable(
        algebra=A,
        irreducibles=irr,
        block_dims=dims,
        multiplicities=tuple(float(x) for x in diag.real),
        idempotents=idems,
        tol=tol,
        seed=seed,
        residuals=residuals,
    )


# -- operations on characters -------------------------------------------------

def dual_form(chi, phi):
    """``[chi, phi] = |B+|^{-1} sum_b chi(b) phi(b*) / |b|``."""
    A = chi.parent if isinstance(chi, ClassFunction) else phi.parent
    return _dual_values(A, _values(chi), _values(phi))


@dataclass(frozen=True)
class Decomposition:
    raw: np.ndarray
    rounded: tuple
    is_character: bool
    in_span: bool
    residual: float

    def constituents(self, tol=INTEGER_TOL):
        return [i for i, a in enumerate(self.raw) if a.real > tol]


def decompose(table, phi):
    """Coefficients of ``phi`` over ``Irr(A)``, with a linear-solve cross-check.

    ``is_character`` holds when ``phi`` lies in the span of the irreducibles
    and every coefficient is within 1e-6 of a nonnegative integer.
    """
    v = _values(phi)
    irr = table.irreducibles
    A = table.algebra
    by_form = np.array([_dual_values(A, v, chi.values) for chi in irr])
    by_form = by_form / np.array(table.multiplicities)
    X = table.matrix.T
    by_solve, *_ = np.linalg.lstsq(X, v, rcond=None)
    scale = max(1.0, float(np.max(np.abs(v))))
    residual = float(np.max(np.abs(X @ by_solve - v))) / scale
    in_span = residual < INTEGER_TOL
    if in_span:
        gap = float(np.max(np.abs(by_form - by_solve)))
        if gap >= table.tol * max(1.0, float(np.max(np.abs(by_form)))):
            raise CrossCheckMismatch(f"dual-form and linear-solve coefficients differ by {gap:.3e}")
    raw = _snap(by_form)
    rounded = tuple(int(round(a.real)) for a in raw)
    integral = all(
        abs(a.real - n) < INTEGER_TOL and abs(a.imag) < INTEGER_TOL and n >= 0
        for a, n in zip(raw, rounded)
    )
    return Decomposition(raw, rounded, in_span and integral, in_span, residual)


def _dual_values(A, x, y):
    deg = A.float_degrees
    return complex(np.sum(x * y[list(A.star)] / deg) / float(A.total_degree))


def is_character(table, phi):
    return decompose(table, phi).is_character


def kernel(chi, tol=DEFAULT_TOL):
    """``K(chi) = {b : chi(b) = |b| chi(1)}`` as a closed subset."""
    A = chi.parent
    v = chi.values
    idx = [b for b in range(A.dim) if abs(v[b] - A.float_degrees[b] * v[0]) < tol]
    try:
        return ClosedSubset(A, idx)
    except NotClosed:
        raise KernelNotClosed(f"K(chi) = {idx} is not closed; retry with a tighter tolerance")


def value_at_idempotent(chi, C):
    """``chi(e)`` for ``e = |C+|^{-1} C+``."""
    v = _values(chi)
    return complex(sum(v[c] for c in C.indices) / float(C.size))


def lift_character(C, psi, presentation=None):
    """Lift ``psi`` in ``Irr(A/C)`` to ``A`` via ``b -> alpha_b psi(b/C)``.

    For strongly normal ``C`` the scalars are checked to equal ``|b|``.
    """
    if not C.normal:
        raise NotNormal(f"{list(C.indices)} is not a normal closed subset")
    pres = presentation or quotient(C)
    A = C.parent
    if C.strongly_normal:
        for b, a in enumerate(pres.alphas):
            if a != A.degrees[b]:
                raise InternalInconsistency(f"alpha_{b} = {a} but |b| = {A.degrees[b]}")
    vals = [float(pres.alphas[b]) * psi.values[pres.coset_of[b]] for b in range(A.dim)]
    irreducible = getattr(psi, "irreducible", False)
    return Character(A, _snap(vals), irreducible=irreducible)


@dataclass(frozen=True)
class EmbeddingReport:
    closed: ClosedSubset
    mapping: dict
    excluded: tuple
    lifts: tuple
    values_at_e: tuple


def embedding_check(C, table=None, quotient_table=None, presentation=None, tol=DEFAULT_TOL):
    """Match every lifted irreducible of ``A/C`` with an irreducible of ``A``.

    Checks that the matching is injective and that its image is exactly the
    set of irreducibles with ``chi(e) != 0``.
    """
    if not C.normal:
        raise NotNormal(f"{list(C.indices)} is not a normal closed subset")
    pres = presentation or quotient(C)
    table = table or character_table(C.parent, tol=tol)
    qtable = quotient_table or character_table(pres.quotient, tol=tol)
    lifts = tuple(lift_character(C, psi, pres) for psi in qtable)
    mapping = {}
    for j, lifted in enumerate(lifts):
        i = table.index_of(lifted, MATCH_TOL)
        if i is None:
            raise EmbeddingMismatch(f"lift of quotient character {j} matches no irreducible")
        if i in mapping.values():
            raise EmbeddingMismatch(f"lift of quotient character {j} collides at irreducible {i}")
        mapping[j] = i
    at_e = tuple(value_at_idempotent(chi, C) for chi in table)
    nonzero = {i for i, x in enumerate(at_e) if abs(x) > tol}
    if set(mapping.values()) != nonzero:
        raise EmbeddingMismatch(
            f"image {sorted(mapping.values())} differs from irreducibles with chi(e) != 0: {sorted(nonzero)}"
        )
    excluded = tuple(i for i in range(len(table)) if i not in nonzero)
    return EmbeddingReport(C, mapping, excluded, lifts, at_e)
