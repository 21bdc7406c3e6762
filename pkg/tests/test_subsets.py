import itertools as it
from fractions import Fraction

import pytest

from tba.algebra import multiply
from tba.constructions import (
    group_algebra,
    klein_four_table,
    q_example,
    symmetric_table,
    tensor_product,
    cyclic_table,
)
from tba.errors import AlphaIdentityFailed, NotClosed
from tba.subsets import (
    ClosedSubset,
    alpha,
    closure,
    double_cosets,
    enumerate_closed_subsets,
    idempotent_is_central,
    is_normal,
    is_strongly_normal,
    quotient,
    quotient_degree_one_set,
)

S3_TABLE = symmetric_table(3)
# lexicographic permutations of (0,1,2): 0=id, 1=(12), 2=(01), 3,4 = 3-cycles, 5=(02)
A3 = (0, 3, 4)
TRANSPOSITION = (0, 1)


def subgroups(table):
    """Brute force: every subset containing 0 closed under the group product."""
    n = len(table)
    out = []
    for r in range(n):
        for rest in it.combinations(range(1, n), r):
            H = {0, *rest}
            if all(table[g][h] in H for g in H for h in H):
                out.append(tuple(sorted(H)))
    return sorted(out, key=lambda s: (len(s), s))


def test_closure_examples(q3):
    assert closure(q3, {0}).indices == (0,)
    assert closure(q3, {1}).indices == (0, 1)
    assert closure(q3, {1, 2}).indices == tuple(range(5))


def test_closure_is_least(q3):
    # any closed superset of {1, 2} is all of B, by brute force over subsets
    for r in range(5):
        for S in it.combinations(range(1, 5), r):
            T = {0, *S}
            try:
                ClosedSubset(q3, T)
            except NotClosed:
                continue
            if {1, 2} <= T:
                assert T == set(range(5))


def test_not_closed_rejected(q3):
    with pytest.raises(NotClosed):
        ClosedSubset(q3, [0, 1, 2])


def generated_subgroups(table):
    """Subgroups generated by at most two elements (every subgroup of S4 is)."""
    n = len(table)
    out = set()
    for g, h in it.combinations_with_replacement(range(n), 2):
        H = {0, g, h}
        while True:
            grown = H | {table[x][y] for x in H for y in H}
            if grown == H:
                break
            H = grown
        out.add(tuple(sorted(H)))
    return sorted(out, key=lambda s: (len(s), s))


@pytest.mark.parametrize("table", [cyclic_table(2), klein_four_table(), S3_TABLE, cyclic_table(4)])
def test_closed_subsets_are_subgroups(table):
    A = group_algebra(table)
    assert [C.indices for C in enumerate_closed_subsets(A)] == subgroups(table)


def test_s4_subgroup_lattice():
    table = symmetric_table(4)
    found = [C.indices for C in enumerate_closed_subsets(group_algebra(table))]
    assert found == generated_subgroups(table)
    assert len(found) == 30


def test_enumeration_counts(klein, s3):
    trivial = group_algebra([[0]])
    assert [C.indices for C in enumerate_closed_subsets(trivial)] == [(0,)]
    assert len(enumerate_closed_subsets(klein)) == 5
    assert len(enumerate_closed_subsets(s3)) == 6


def test_enumeration_cap(q3):
    from tba.errors import SizeLimitExceeded

    with pytest.raises(SizeLimitExceeded):
        enumerate_closed_subsets(q3, cap=3)


def normal_subgroup(table, H):
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == 0) for g in range(n)]
    return all(table[table[inv[g]][h]][g] in H for g in range(n) for h in H)


def test_normality_matches_group_conjugation(s3):
    for C in enumerate_closed_subsets(s3):
        assert is_normal(C) == normal_subgroup(S3_TABLE, set(C.indices))
        assert is_normal(C) == idempotent_is_central(C)
    assert not is_normal(ClosedSubset(s3, TRANSPOSITION))
    assert is_normal(ClosedSubset(s3, (0,)))


def test_q_example_subsets_normal_not_strongly(q3):
    C = ClosedSubset(q3, (0, 1))
    assert is_normal(C)
    assert not is_strongly_normal(C)
    assert is_strongly_normal(ClosedSubset(q3, range(5)))


def test_q2_anomaly():
    # at q = 2 the algebra is the Klein four-group algebra: {r_0, r_i} is strongly normal
    A = q_example(2)
    for i in (1, 2, 3):
        assert is_strongly_normal(ClosedSubset(A, (0, i)))


@pytest.mark.parametrize("q", [3, 4, 5])
def test_q_family_never_strongly_normal(q):
    A = q_example(q)
    for i in range(1, q + 2):
        C = ClosedSubset(A, (0, i))
        assert C.normal and not C.strongly_normal


def test_s3_a3_strongly_normal(s3):
    assert is_strongly_normal(ClosedSubset(s3, A3))


def test_double_cosets(q3, s3):
    assert double_cosets(ClosedSubset(q3, (0,))) == [(i,) for i in range(5)]
    assert double_cosets(ClosedSubset(q3, (0, 1))) == [(0, 1), (2, 3, 4)]
    # oracle: left cosets gA3
    cosets = {tuple(sorted(S3_TABLE[g][h] for h in A3)) for g in range(6)}
    assert set(double_cosets(ClosedSubset(s3, A3))) == cosets == {(0, 3, 4), (1, 2, 5)}


def test_alpha(q3, s3):
    C = ClosedSubset(q3, (0, 1))
    assert alpha(C, 0) == 1
    # (r_0 + r_1) r_2 = r_2 + r_3 + r_4
    assert multiply(C.plus, q3.basis(2)) == q3.sum_of((2, 3, 4))
    assert alpha(C, 2) == 1
    assert alpha(C, 1) == 2
    N = ClosedSubset(s3, A3)
    assert all(alpha(N, b) == 1 == s3.degrees[b] for b in range(6))


def test_alpha_identity_failure(q3):
    from tba.algebra import TableAlgebra

    rows = {(a, b): q3.row(a, b) for a in range(5) for b in range(5)}
    rows[(1, 2)] = {3: Fraction(2), 4: Fraction(1)}  # corrupt, bypasses validation
    bad = TableAlgebra(5, rows, q3.star, q3.degrees)
    C = ClosedSubset(bad, (0, 1))
    with pytest.raises(AlphaIdentityFailed):
        alpha(C, 2)


def test_quotient_trivial_is_identity(algebras):
    for A in algebras.values():
        pres = quotient(ClosedSubset(A, (0,)))
        assert pres.quotient == A


def test_quotient_q3(q3):
    pres = quotient(ClosedSubset(q3, (0, 1)))
    Q = pres.quotient
    assert Q.dim == 2
    assert Q.degrees == (1, 2)
    assert Q.lam(1, 1, 0) == 2 and Q.lam(1, 1, 1) == 1
    # oracle: (b/C)^2 with b/C = (1/3)(r_2 + r_3 + r_4), expanded in A
    bC = q3.sum_of((2, 3, 4)) / 3
    one_C = q3.sum_of((0, 1)) / 3
    assert multiply(bC, bC) == 2 * one_C + 1 * bC


def test_quotient_s3_by_a3(s3):
    pres = quotient(ClosedSubset(s3, A3))
    assert pres.quotient == group_algebra(cyclic_table(2))
    assert pres.is_group_algebra()


def test_hecke_quotient_matches_q3_quotient(q3, s3):
    # S3 modulo a non-normal subgroup gives the same dim-2 algebra
    a = quotient(ClosedSubset(s3, TRANSPOSITION)).quotient
    b = quotient(ClosedSubset(q3, (0, 1))).quotient
    assert a == b


def test_degree_one_set(q3, s3):
    C = ClosedSubset(q3, (0, 1))
    assert quotient_degree_one_set(C) == {0, 1}
    assert 2 not in quotient_degree_one_set(C)
    assert quotient_degree_one_set(ClosedSubset(s3, A3)) == set(range(6))


def _all_cases(algebras):
    from tba.constructions import cycle_scheme, scheme_algebra

    extra = {
        "q3xZ2": tensor_product(q_example(3), group_algebra(cyclic_table(2))),
        "S3xpentagon": tensor_product(group_algebra(S3_TABLE), scheme_algebra(cycle_scheme(5))),
    }
    return {**algebras, **extra}


def test_theorem_equivalences_exhaustive(algebras):
    for name, A in _all_cases(algebras).items():
        for C in enumerate_closed_subsets(A):
            pres = quotient(C)  # raises on representative dependence
            Q = pres.quotient
            if C.strongly_normal:
                assert C.normal, name
            assert C.strongly_normal == pres.is_group_algebra() == all(x == 1 for x in Q.degrees), name
            quotient_degree_one_set(C, pres)
            if C.strongly_normal:
                assert pres.alphas == A.degrees, name
            for i, j in it.product(range(Q.dim), repeat=2):
                lhs = Q.degrees[i] * Q.degrees[j]
                assert lhs == sum((v * Q.degrees[k] for k, v in Q.row(i, j).items()), Fraction(0))


def test_strongly_normal_subset_in_product(algebras):
    A = _all_cases(algebras)["q3xZ2"]
    C = ClosedSubset(A, [2 * a for a in range(5)])  # q3 x {e}
    assert C.strongly_normal
    assert quotient(C).quotient == group_algebra(cyclic_table(2))
