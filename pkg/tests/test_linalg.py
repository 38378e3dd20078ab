import math
import random

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from solvgroups.linalg import (determinant, ext_gcd, inverse_unimodular, invariant_factors,
                               is_primitive, is_rank2_direct_summand, matmul, smith_normal_form,
                               solve_integer, unimodular_completion)


def test_ext_gcd_examples():
    assert ext_gcd([2, 3]) == (1, [-1, 1])
    assert ext_gcd([0, 0, 0]) == (0, [0, 0, 0])
    g, l = ext_gcd([4, 6])
    assert g == 2 and 4 * l[0] + 6 * l[1] == 2


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5))
def test_ext_gcd_bezout(v):
    g, l = ext_gcd(v)
    assert g == math.gcd(*v)
    assert sum(a * b for a, b in zip(v, l)) == g


def _diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def test_snf_examples():
    assert _diag(smith_normal_form([[1, 0], [0, 2]])[0]) == [1, 2]
    assert _diag(smith_normal_form([[0, 1], [1, 0]])[0]) == [1, 1]
    D, U, V = smith_normal_form([[1, 2, 3], [4, 5, 6]])
    assert D == [[1, 0, 0], [0, 3, 0]]
    assert matmul(matmul(U, [[1, 2, 3], [4, 5, 6]]), V) == D
    assert abs(determinant(U)) == abs(determinant(V)) == 1


def test_snf_random_against_sympy():
    rng = random.Random(7)
    for _ in range(500):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        A = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        D, U, V = smith_normal_form(A)
        assert matmul(matmul(U, A), V) == D
        assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
        d = _diag(D)
        assert all(x >= 0 for x in d)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])
        assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
        oracle = sympy_snf(Matrix(A), domain=ZZ)
        assert d == [abs(int(oracle[i, i])) for i in range(min(m, n))]


def test_primitive_and_summand():
    assert is_primitive([1, 0, 0])
    assert not is_primitive([2, 2])
    assert not is_primitive([0, 0, 0])
    assert is_rank2_direct_summand([[1, 0], [0, 1]])
    assert not is_rank2_direct_summand([[2, 0], [0, 1]])
    assert is_rank2_direct_summand([[1, 1, 0], [0, 1, 0]])
    assert not is_rank2_direct_summand([[1, 2, 3], [2, 4, 6]])
    assert invariant_factors([[2, 0], [0, 1]]) == [1, 2]


@pytest.mark.parametrize("A", [[[1, 0], [0, 1]], [[1, 0, 0], [0, 1, 0]], [[1, 1, 0], [0, 1, 0]],
                               [[3, 5, 7], [1, 2, 2]], [[2, 3, 0, 0], [0, 0, 5, 7]]])
def test_unimodular_completion(A):
    C = unimodular_completion(A)
    assert C[:2] == A
    assert abs(determinant(C)) == 1
    Ci = inverse_unimodular(C)
    n = len(C)
    assert matmul(C, Ci) == [[int(i == j) for j in range(n)] for i in range(n)]


def test_unimodular_completion_rejects_non_summand():
    with pytest.raises(ValueError):
        unimodular_completion([[2, 0], [0, 1]])


def test_solve_integer():
    assert solve_integer([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert solve_integer([[2, 0], [0, 3]], [1, 0]) is None
    x = solve_integer([[1, 1, 1]], [5])
    assert sum(x) == 5


def test_determinant_matches_sympy():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert determinant(A) == Matrix(A).det()
