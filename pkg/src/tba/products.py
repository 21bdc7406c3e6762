"""Character products, powers and the Burnside-Brauer constituent check."""

from __future__ import annotations

import itertools as it
from dataclasses import dataclass, field

import numpy as np

from .characters import (
    Character,
    ClassFunction,
    _values,
    decompose,
    degree_character,
    kernel,
)
from .errors import HypothesisFailed

VALUE_TOL = 1e-6

# chi^0 is taken to be the degree map, the identity for the product below.
CHI0_NOTE = "chi^0 is the degree map b -> |b| (identity of the character product)"


def product(chi, psi):
    """``(chi psi)(b) = chi(b) psi(b) / |b|`` as a class function."""
    A = chi.parent
    v = _values(chi) * (_values(psi) / A.float_degrees)
    return ClassFunction(A, v)


def power(chi, i):
    """``chi^i(b) = chi(b)^i / |b|^(i-1)``; ``chi^0`` is the degree map."""
    if i < 0:
        raise ValueError("power must be nonnegative")
    A = chi.parent
    if i == 0:
        return ClassFunction(A, degree_character(A).values)
    deg = A.float_degrees
    return ClassFunction(A, _values(chi) ** i / deg ** (i - 1))


def _value_key(z):
    return (round(z.real, 9), round(z.imag, 9))


def distinct_values(chi, tol=VALUE_TOL):
    """Cluster ``chi(b) / |b|``; returns ``(k, values, classes)``.

    ``values[0]`` is ``chi(1)``; the rest are in real-then-imaginary order.
    ``classes[t]`` lists the basis indices whose ratio falls in cluster ``t``.
    """
    A = chi.parent
    ratios = _values(chi) / A.float_degrees
    reps, classes = [], []
    for b, z in enumerate(ratios):
        for t, r in enumerate(reps):
            if abs(z - r) < tol:
                classes[t].append(b)
                break
        else:
            reps.append(z)
            classes.append([b])
    # basis 0 opens the first cluster, so chi(1) is already first
    order = [0] + sorted(range(1, len(reps)), key=lambda t: _value_key(reps[t]))
    values = [complex(reps[t]) for t in order]
    classes = [classes[t] for t in order]
    return len(values), values, classes


@dataclass
class BBReport:
    k: int
    values: list
    classes: list
    hypothesis_kernel_ok: bool
    hypothesis_powers_ok: bool
    power_decompositions: list
    coverage: dict
    verdict: bool
    betas: list = field(default_factory=list)
    vandermonde: complex = 0j
    regular_chi0: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def failures(self):
        out = []
        if not self.hypothesis_kernel_ok:
            out.append("kernel")
        if not self.hypothesis_powers_ok:
            out.append("powers")
        return out


def burnside_brauer(table, chi, *, raise_on_failure=True):
    """Check that every irreducible is a constituent of some ``chi^i``, ``0 <= i < k``.

    ``k`` is the number of distinct values of ``chi(b)/|b|``.  Hypotheses:
    ``K(chi) = {1}`` and ``chi^i`` is a character for ``1 <= i < k``.  When a
    hypothesis fails, :class:`HypothesisFailed` is raised carrying the full
    report (coverage is still computed), unless ``raise_on_failure`` is false.
    """
    A = table.algebra
    k, values, classes = distinct_values(chi)
    kernel_ok = kernel(chi).indices == (0,)

    decomps = [decompose(table, power(chi, i)) for i in range(k)]
    powers_ok = all(dec.is_character for dec in decomps[1:])

    coverage = {}
    for i, dec in enumerate(decomps):
        for j in dec.constituents():
            coverage.setdefault(j, i)
    verdict = all(coverage.get(j, k) <= k - 1 for j in range(len(table)))

    # diagnostics: per-class sums of psi(b*) and the Vandermonde determinant
    star = list(A.star)
    betas = [
        [complex(sum(psi.values[star[b]] for b in cls)) for cls in classes]
        for psi in table
    ]
    vdm = complex(np.prod([values[j] - values[i] for i, j in it.combinations(range(k), 2)]))
    notes = [CHI0_NOTE]
    if abs(vdm) < VALUE_TOL:
        notes.append(f"Vandermonde determinant is near zero ({abs(vdm):.3e})")

    # the regular character as an alternative reading of chi^0
    trL = np.einsum("axx->a", A.dense)
    regular = decompose(table, ClassFunction(A, trL))

    report = BBReport(
        k=k,
        values=values,
        classes=classes,
        hypothesis_kernel_ok=kernel_ok,
        hypothesis_powers_ok=powers_ok,
        power_decompositions=decomps,
        coverage=coverage,
        verdict=verdict,
        betas=betas,
        vandermonde=vdm,
        regular_chi0=regular.rounded,
        notes=notes,
    )
    if raise_on_failure and report.failures:
        raise HypothesisFailed(report.failures, report)
    return report


def faithful_candidates(table, max_coeff=2, max_terms=2):
    """Characters ``sum a_i chi_i`` (at most ``max_terms`` terms, ``a_i <= max_coeff``)
    with ``K(chi) = {1}``, in a fixed order.
    """
    A = table.algebra
    out = []
    r = len(table)
    for terms in range(1, max_terms + 1):
        for idx in it.combinations(range(r), terms):
            for coeffs in it.product(range(1, max_coeff + 1), repeat=terms):
                v = sum(c * table[i].values for c, i in zip(coeffs, idx))
                chi = Character(A, v, irreducible=(terms == 1 and coeffs[0] == 1))
                if kernel(chi).indices == (0,):
                    out.append((dict(zip(idx, coeffs)), chi))
    return out
