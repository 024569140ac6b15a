import random

import pytest
from hypothesis import given, strategies as st

from vsetaccess.errors import DomainError
from vsetaccess.matrix import (CountMatrix, answer_count, dot, identity, indicator, mat_vec,
                               multiply, vec_mat)

T0_LEFT = [[1, 2, 3], [0, 1, 2], [0, 0, 1]]
T0_RIGHT = [[1, 1, 3], [0, 0, 1], [0, 0, 1]]
T0_ROOT = [[1, 1, 8], [0, 0, 3], [0, 0, 1]]
T1_ROOT = [[1, 0, 0], [0, 0, 3], [0, 0, 1]]


def test_multiply_root_children():
    assert multiply(CountMatrix(T0_LEFT), CountMatrix(T0_RIGHT)) == T0_ROOT


def test_identity():
    assert identity(3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert identity(1) == [[1]]
    M = CountMatrix(T0_ROOT)
    assert M @ identity(3) == M
    assert identity(3) @ M == M


def test_t1_leaf_product(aex, w0):
    M = identity(3)
    for c in w0:
        M = M @ aex.transition_matrix(c, {"x2"})
    assert M == T1_ROOT


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        identity(2) @ identity(3)
    with pytest.raises(DomainError):
        CountMatrix([[1, 2]])


def test_answer_count():
    assert answer_count(CountMatrix(T0_ROOT), [0], [2]) == 8
    assert answer_count(CountMatrix(T1_ROOT), [0], [2]) == 0
    assert answer_count(CountMatrix.zero(3), [0, 1, 2], [0, 1, 2]) == 0


def test_entries_are_unbounded():
    big = CountMatrix([[2 ** 70, 1], [0, 1]])
    assert (big @ big)[0, 0] == 2 ** 140


small = st.integers(0, 5)


def matrices(dim):
    return st.lists(st.lists(small, min_size=dim, max_size=dim), min_size=dim, max_size=dim).map(CountMatrix)


@given(matrices(3), matrices(3), matrices(3))
def test_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@given(matrices(4))
def test_vector_helpers_agree_with_products(m):
    rng = random.Random(0)
    I = [i for i in range(4) if rng.random() < 0.5] or [0]
    F = [3]
    u, v = indicator(4, I), indicator(4, F)
    assert dot(vec_mat(u, m), v) == answer_count(m, I, F)
    assert dot(u, mat_vec(m, v)) == answer_count(m, I, F)
