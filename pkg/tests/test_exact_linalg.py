import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertoric import exact_linalg as la


def matrices(max_rows=4, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def minors_gcd(M, k):
    """gcd of all ``k x k`` minors."""
    m, n = la.shape(M)
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            g = gcd(g, la.determinant([[M[i][j] for j in cols] for i in rows]))
    return g


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_matches_determinantal_divisors(M):
    snf = la.smith_normal_form(M)
    assert la.matmul(la.matmul(snf.U, M), snf.V) == snf.S
    assert abs(la.determinant(snf.U)) == 1 and abs(la.determinant(snf.V)) == 1
    f = snf.invariant_factors
    assert all(x > 0 for x in f)
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    assert snf.rank == la.rank(M)
    prod = 1
    for k, x in enumerate(f, start=1):
        prod *= x
        assert minors_gcd(M, k) == prod


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hermite_form_is_canonical(M):
    H = la.hermite_normal_form(M)
    assert la.hermite_normal_form(H) == H
    assert len(H) == la.rank(M)
    # same lattice: each basis expresses the other's rows
    for row in M:
        assert la.solve_rational(la.transpose(H), row) is not None or not any(row)
    # unimodular row operations do not change the form
    shuffled = [list(r) for r in reversed(M)]
    if len(shuffled) > 1:
        shuffled[0] = [a + 3 * b for a, b in zip(shuffled[0], shuffled[1])]
    assert la.hermite_normal_form(shuffled) == H


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_integer_kernel_is_saturated_and_complete(M):
    m, n = la.shape(M)
    K = la.integer_kernel_basis(M)
    assert len(K) == n - la.rank(M)
    for v in K:
        assert la.matvec(M, v) == [0] * m
    if K:
        assert la.is_saturated(K)
    # every small integer kernel vector is an integer combination of K
    for v in itertools.product(range(-2, 3), repeat=n):
        if any(v) and la.matvec(M, v) == [0] * m:
            assert la.lattice_equal(K, K + [list(v)])


def test_saturation_example():
    B = [[2, 0, 2], [0, 1, 1]]
    assert not la.is_saturated(B)
    S = la.saturation(B)
    assert la.is_saturated(S)
    assert la.lattice_equal(S, [[1, 0, 1], [0, 1, 1]])


def test_is_saturated_requires_full_rank():
    with pytest.raises(la.LinalgError):
        la.is_saturated([[1, 1], [2, 2]])


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=3, max_cols=6, lo=-3, hi=3))
def test_gale_dual(B):
    if la.rank(B) < len(B) or not la.is_saturated(B):
        return
    A = la.gale_dual(B)
    assert la.matmul(A, la.transpose(B)) == [[0] * len(B) for _ in A]
    assert len(A) == len(B[0]) - len(B)
    if A:
        assert la.is_saturated(A)


def test_gale_dual_example():
    B = [[1, 1, 0, 1, 0], [1, 0, 1, 0, 1]]
    A = la.gale_dual(B)
    assert la.lattice_equal(A, [[0, 1, 0, -1, 0], [0, 0, 1, 0, -1], [1, -1, -1, 0, 0]])


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_determinant_against_permutation_expansion(M):
    if len(M) != len(M[0]):
        return
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    assert la.determinant(M) == total


@settings(max_examples=150, deadline=None)
@given(matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_and_kernel(M, b):
    m, n = la.shape(M)
    b = b[:m] + [0] * (m - len(b))
    x = la.solve_rational(M, b)
    aug_rank = la.rank([list(r) + [bi] for r, bi in zip(M, b)])
    if x is None:
        assert aug_rank > la.rank(M)
    else:
        assert la.matvec(M, x) == [Fraction(v) for v in b]
    ker = la.rational_kernel(M, n)
    assert len(ker) == n - la.rank(M)
    for v in ker:
        assert all(x == 0 for x in la.matvec(M, v))


def test_primitive_and_sign():
    assert la.primitive([4, -6, 0]) == [2, -3, 0]
    assert la.normalize_sign([0, -2, 3]) == [0, 2, -3]
    assert la.in_span([2, 2], [[1, 1]])
    assert not la.in_span([1, 0], [[1, 1]])
