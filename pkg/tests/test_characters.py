import itertools as it
import math

import numpy as np
import pytest

from tba.characters import (
    Character,
    center_basis,
    character_table,
    decompose,
    degree_character,
    dual_form,
    embedding_check,
    kernel,
    lift_character,
    value_at_idempotent,
)
from tba.constructions import (
    cyclic_table,
    group_algebra,
    q_example,
    symmetric_table,
    tensor_product,
)
from tba.errors import NotNormal
from tba.products import product
from tba.subsets import ClosedSubset, enumerate_closed_subsets, quotient

A3 = (0, 3, 4)
PERMS3 = list(it.permutations(range(3)))


def parity(p):
    return (-1) ** sum(1 for i, j in it.combinations(range(len(p)), 2) if p[i] > p[j])


def classical_s3():
    triv = [1] * 6
    sign = [parity(p) for p in PERMS3]
    std = [sum(p[i] == i for i in range(3)) - 1 for p in PERMS3]
    return triv, sign, std


def as_set(table):
    return {tuple(np.round(chi.values, 9)) for chi in table}


@pytest.fixture(scope="module")
def dim2(q3):
    return quotient(ClosedSubset(q3, (0, 1))).quotient


def test_s3_table(s3):
    T = character_table(s3)
    assert T.block_dims == (1, 1, 2)
    assert sum(n * n for n in T.block_dims) == 6
    assert as_set(T) == {tuple(complex(x) for x in chi) for chi in classical_s3()}


def test_klein_table(klein):
    T = character_table(klein)
    oracle = {tuple(complex((-1) ** bin(s & g).count("1")) for g in range(4)) for s in range(4)}
    assert as_set(T) == oracle


def test_z4_table(algebras):
    T = character_table(algebras["Z4"])
    oracle = {tuple(np.round([1j ** (k * g) for g in range(4)], 9)) for k in range(4)}
    assert as_set(T) == oracle


def test_pentagon_table(algebras):
    T = character_table(algebras["pentagon"])
    # adjacency eigenvalues of the 5-cycle: A_1 has 2cos(2 pi k / 5), A_2 = J - I - A_1
    oracle = set()
    for k in range(3):
        a1 = 2 * math.cos(2 * math.pi * k / 5)
        j = 5 if k == 0 else 0
        oracle.add((1, round(a1, 9), round(j - 1 - a1, 9)))
    got = {tuple(round(x.real, 9) for x in chi.values) for chi in T}
    assert got == oracle


def test_dim2_table(dim2):
    T = character_table(dim2)
    roots = sorted(((1 + s * 3) / 2) for s in (1, -1))  # roots of x^2 - x - 2
    assert sorted(chi.values[1].real for chi in T) == roots == [-1, 2]
    assert T.block_dims == (1, 1)


def test_s4_block_dims():
    T = character_table(group_algebra(symmetric_table(4)))
    assert T.block_dims == (1, 1, 2, 3, 3)


def test_center_dimension(s3, q3):
    assert len(center_basis(s3)[0]) == 3
    assert len(center_basis(q3)[0]) == 5


def test_commutative_characters_are_homomorphisms(tables):
    for name, T in tables.items():
        A = T.algebra
        if not A.is_commutative:
            continue
        for chi in T:
            for a, b in it.product(range(A.dim), repeat=2):
                rhs = sum(float(v) * chi[c] for c, v in A.row(a, b).items())
                assert abs(chi[a] * chi[b] - rhs) < 1e-9, name


def test_dual_form_examples(s3, dim2):
    T = character_table(s3)
    G = np.array([[dual_form(x, y) for y in T] for x in T])
    assert np.allclose(G, np.eye(3), atol=1e-12)
    T2 = character_table(dim2)
    chi2 = T2[T2.index_of([1, -1])]
    # (1/3)(1 + (1/2)(-1)(-1)) = 1/2
    assert dual_form(chi2, chi2) == pytest.approx(0.5)


def test_dual_form_of_degree_map(algebras):
    for A in algebras.values():
        deg = degree_character(A)
        assert dual_form(deg, deg) == pytest.approx(1.0)


def test_regular_trace_identity(tables):
    for T in tables.values():
        A = T.algebra
        trace = np.einsum("axx->a", A.dense)
        total = sum(n * chi.values for chi, n in zip(T, T.block_dims))
        assert np.max(np.abs(total - trace)) < 1e-6


def test_gram_and_star_invariants(tables):
    for T in tables.values():
        A = T.algebra
        for i, x in enumerate(T):
            assert x.values[0].real > 0
            assert np.allclose(x.values[list(A.star)], np.conj(x.values), atol=1e-9)
            for j, y in enumerate(T):
                g = dual_form(x, y)
                if i == j:
                    assert abs(g.imag) < 1e-8 and g.real > 1e-8
                else:
                    assert abs(g) < 1e-8
        assert T.degree_index is not None


def test_seed_reproducibility(tables):
    for T in tables.values():
        A = T.algebra
        again = character_table(A, seed=0)
        other = character_table(A, seed=1)
        assert np.array_equal(again.matrix, T.matrix)
        assert np.max(np.abs(other.matrix - T.matrix)) < 1e-8


def test_decompose_examples(s3, dim2):
    T = character_table(s3)
    for i, chi in enumerate(T):
        dec = decompose(T, chi)
        assert dec.rounded == tuple(int(j == i) for j in range(3)) and dec.is_character
    triv, sign, std = classical_s3()
    std_chi = T[T.index_of(std)]
    dec = decompose(T, product(std_chi, std_chi))
    assert dec.is_character
    assert dec.rounded[T.index_of(triv)] == dec.rounded[T.index_of(sign)] == dec.rounded[T.index_of(std)] == 1

    T2 = character_table(dim2)
    chi2 = T2[T2.index_of([1, -1])]
    phi = product(chi2, chi2)
    assert np.allclose(phi.values, [1, 0.5])
    # oracle: solve a (1, 2) + c (1, -1) = (1, 1/2) by hand: c = 1/2, a = 1/2
    dec = decompose(T2, phi)
    assert np.allclose(dec.raw, [0.5, 0.5], atol=1e-9)
    assert not dec.is_character


def test_decompose_class_function_outside_span(s3):
    T = character_table(s3)
    dec = decompose(T, [1, 0, 0, 0, 0, 0.5])  # not constant on classes
    assert not dec.in_span and not dec.is_character


def test_kernel_examples(s3, algebras):
    T = character_table(s3)
    triv, sign, std = classical_s3()
    for A in algebras.values():
        assert kernel(degree_character(A)).indices == tuple(range(A.dim))
    assert kernel(T[T.index_of(sign)]).indices == A3
    assert kernel(T[T.index_of(std)]).indices == (0,)


def test_value_at_idempotent(s3, algebras):
    T = character_table(s3)
    triv, sign, std = classical_s3()
    N = ClosedSubset(s3, A3)
    assert value_at_idempotent(T[T.index_of(std)], N) == pytest.approx(0)
    assert value_at_idempotent(T[T.index_of(sign)], N) == pytest.approx(1)
    for name in ("S3", "klein4", "Z4"):
        A = algebras[name]
        for C in enumerate_closed_subsets(A):
            assert value_at_idempotent(degree_character(A), C) == pytest.approx(1)


def test_lift_examples(s3, q3):
    N = ClosedSubset(s3, A3)
    QT = character_table(quotient(N).quotient)
    T = character_table(s3)
    triv_q = QT[QT.degree_index]
    assert np.array_equal(lift_character(N, triv_q).values, degree_character(s3).values)
    sign_q = QT[QT.index_of([1, -1])]
    lifted = lift_character(N, sign_q)
    assert T.index_of(lifted) == T.index_of(classical_s3()[1])

    C = ClosedSubset(q3, (0, 1))
    Q2 = character_table(quotient(C).quotient)
    lifted = lift_character(C, Q2[Q2.index_of([1, -1])])
    # alpha is 2 on r_1 and 1 on the coset {r_2, r_3, r_4}
    assert np.allclose(lifted.values, [1, 2, -1, -1, -1])
    assert lifted.irreducible


def test_lift_requires_normal(s3):
    C = ClosedSubset(s3, (0, 1))
    QT = character_table(quotient(C).quotient)
    with pytest.raises(NotNormal):
        lift_character(C, QT[0])


def test_embedding_examples(s3, q3):
    T = character_table(s3)
    rep = embedding_check(ClosedSubset(s3, (0,)), T)
    assert sorted(rep.mapping.values()) == list(range(3)) and rep.excluded == ()
    rep = embedding_check(ClosedSubset(s3, A3), T)
    assert rep.excluded == (T.index_of(classical_s3()[2]),)
    rep = embedding_check(ClosedSubset(q3, (0, 1)))
    assert len(rep.mapping) == 2 and len(rep.excluded) == 3


def test_lifts_of_irreducibles_are_irreducible(tables):
    extra = tensor_product(q_example(3), group_algebra(cyclic_table(2)))
    cases = [(T.algebra, T) for T in tables.values()] + [(extra, character_table(extra))]
    for A, T in cases:
        for C in enumerate_closed_subsets(A):
            if not C.normal:
                continue
            pres = quotient(C)
            QT = character_table(pres.quotient)
            rep = embedding_check(C, T, QT, pres)
            assert len(QT) == sum(abs(v) > 1e-8 for v in rep.values_at_e)
            for lifted in rep.lifts:
                dec = decompose(T, lifted)
                assert sorted(dec.rounded) == [0] * (len(T) - 1) + [1]


def test_character_sum_is_not_irreducible(s3):
    T = character_table(s3)
    total = T[0] + T[1]
    assert isinstance(total, Character) and not total.irreducible
