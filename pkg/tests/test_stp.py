import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mbgame.stp import (
    DimensionOverflow,
    LogicalVector,
    MixedRadixIndex,
    eval_structure,
    inner_sum,
    kron,
    lex_decode,
    lex_digits_table,
    lex_encode,
    logical_matrix,
    order_reduce_matrix,
    selector_matrix,
    stp,
    stp_chain,
    swap_matrix,
)

TOL = 1e-10


def d(n, i):
    return LogicalVector(n, i).dense()


def naive_stp(A, B):
    """(A ⊗ I)(B ⊗ I) written out with explicit identities, no shortcuts."""
    b, c = A.shape[1], B.shape[0]
    x = b * c // math.gcd(b, c)
    return np.kron(A, np.eye(x // b)) @ np.kron(B, np.eye(x // c))


dims = st.integers(1, 6)


@st.composite
def matrix(draw, rows=None, cols=None):
    r = draw(dims) if rows is None else rows
    c = draw(dims) if cols is None else cols
    seed = draw(st.integers(0, 2**32 - 1))
    return np.random.default_rng(seed).normal(size=(r, c))


# --- worked values ---------------------------------------------------------


def test_stp_of_logical_vectors_concatenates():
    assert np.array_equal(stp(d(2, 1), d(2, 2)), d(4, 2))


def test_stp_identity():
    assert np.array_equal(stp(np.eye(3), np.eye(3)), np.eye(3))


def test_stp_row_times_long_column():
    out = stp(np.array([[1.0, 2.0]]), np.array([[1.0], [0.0], [0.0], [0.0]]))
    assert np.array_equal(out, np.array([[1.0], [0.0]]))


def test_kron_values():
    assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))
    assert np.array_equal(kron([[1, 0]], [[0, 1]]), [[0, 1, 0, 0]])
    assert np.array_equal(kron(np.ones((1, 2)), np.eye(2)), [[1, 0, 1, 0], [0, 1, 0, 1]])


def test_swap_2_2_columns():
    W = swap_matrix(2, 2)
    expected = np.hstack([d(4, 1), d(4, 3), d(4, 2), d(4, 4)])
    assert np.array_equal(W, expected)


@pytest.mark.parametrize("q", [1, 2, 5])
def test_swap_with_one_is_identity(q):
    assert np.array_equal(swap_matrix(1, q), np.eye(q))


def test_swap_2_3_example():
    # W_[h,q] takes H ⋉ Q (H of size h first) to Q ⋉ H
    assert np.array_equal(swap_matrix(2, 3) @ stp(d(2, 1), d(3, 2)), stp(d(3, 2), d(2, 1)))
    assert np.array_equal(swap_matrix(3, 2) @ stp(d(3, 2), d(2, 1)), stp(d(2, 1), d(3, 2)))


def test_order_reduce_values():
    assert np.array_equal(order_reduce_matrix(2), logical_matrix(4, [1, 4]))
    assert np.array_equal(order_reduce_matrix(1), [[1.0]])
    assert np.array_equal(order_reduce_matrix(3) @ d(3, 2), d(9, 5))


def test_selector_values():
    assert np.array_equal(selector_matrix(1, 4, 1), np.eye(4))
    assert np.array_equal(selector_matrix(2, 2, 2) @ stp_chain(d(2, 1), d(2, 2), d(2, 1)), d(2, 2))
    assert np.array_equal(selector_matrix(2, 3, 1), np.kron(np.ones((1, 2)), np.eye(3)))


def test_lex_values():
    assert lex_encode((1, 2, 1, 1, 1, 1), (2, 2, 4, 4, 4, 4)) == 257
    assert lex_encode((1, 1, 1), (3, 4, 5)) == 1
    assert lex_encode((2, 1), (2, 3)) == 4
    # the same answer by listing all six pairs
    pairs = list(itertools.product(range(1, 3), range(1, 4)))
    assert pairs.index((2, 1)) + 1 == 4


def test_eval_structure_and_inner_sum_values():
    assert eval_structure([[5.0, 7.0]], [LogicalVector(2, 2)]) == 7.0
    assert inner_sum([[1, 0, 0]], [[1, 0, 0]]) == 1.0
    assert inner_sum([[1, 2]], [[3, 4]]) == 11.0


def test_errors():
    with pytest.raises(ValueError):
        lex_decode(0, (2, 2))
    with pytest.raises(ValueError):
        lex_decode(5, (2, 2))
    with pytest.raises(ValueError):
        lex_encode((3,), (2,))
    with pytest.raises(ValueError):
        LogicalVector(3, 4)
    with pytest.raises(ValueError):
        eval_structure([[1.0, 2.0, 3.0]], [LogicalVector(2, 1)])
    with pytest.raises(ValueError):
        inner_sum([[1.0, 2.0]], [[1.0, 2.0, 3.0]])
    with pytest.raises(DimensionOverflow):
        kron(np.ones((1, 2**15)), np.ones((1, 2**15)))


# --- properties ------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(matrix(), matrix())
def test_stp_matches_definition(A, B):
    assert np.allclose(stp(A, B), naive_stp(A, B), atol=TOL, rtol=0)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_stp_equal_inner_dims_is_matmul(data):
    n = data.draw(dims)
    A, B = data.draw(matrix(cols=n)), data.draw(matrix(rows=n))
    assert np.allclose(stp(A, B), A @ B, atol=TOL, rtol=0)


@settings(max_examples=200, deadline=None)
@given(matrix(), matrix(), matrix())
def test_stp_associative(A, B, C):
    assert np.allclose(stp(stp(A, B), C), stp(A, stp(B, C)), atol=TOL, rtol=0)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_column_pushes_through(data):
    q = data.draw(dims)
    Q = data.draw(matrix(rows=q, cols=1))
    C = data.draw(matrix())
    assert np.allclose(stp(Q, C), stp(np.kron(np.eye(q), C), Q), atol=1e-12, rtol=0)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_kron_of_factors(data):
    n = data.draw(st.integers(1, 3))
    ks = [data.draw(st.integers(1, 4)) for _ in range(n)]
    A = [d(k, data.draw(st.integers(1, k))) for k in ks]
    M = [data.draw(matrix(cols=k)) for k in ks]
    lhs = stp_chain(*(Mi @ Ai for Mi, Ai in zip(M, A)))
    rhs = kron(*M) @ stp_chain(*A)
    assert np.allclose(lhs, rhs, atol=1e-12, rtol=0)


@pytest.mark.parametrize("h,q", list(itertools.product(range(1, 6), repeat=2)))
def test_swap_exchanges_factors_exhaustive(h, q):
    W = swap_matrix(h, q)
    assert np.array_equal(W @ W.T, np.eye(h * q))  # permutation
    for i, j in itertools.product(range(1, h + 1), range(1, q + 1)):
        assert np.array_equal(stp(d(q, j), d(h, i)), W @ stp(d(h, i), d(q, j)))


@pytest.mark.parametrize("q", range(1, 7))
def test_order_reduce_squares_exhaustive(q):
    O = order_reduce_matrix(q)
    for j in range(1, q + 1):
        assert np.array_equal(stp(d(q, j), d(q, j)), O @ d(q, j))


@pytest.mark.parametrize("h,q,x", list(itertools.product(range(1, 5), repeat=3)))
def test_selector_extracts_middle_exhaustive(h, q, x):
    M = selector_matrix(h, q, x)
    for a, b, c in itertools.product(range(1, h + 1), range(1, q + 1), range(1, x + 1)):
        assert np.array_equal(M @ stp_chain(d(h, a), d(q, b), d(x, c)), d(q, b))


@pytest.mark.parametrize("a,b,c", list(itertools.product(range(1, 6), repeat=3)))
def test_swap_conjugation(a, b, c):
    M = np.random.default_rng(a * 100 + b * 10 + c).normal(size=(a, b))
    lhs = swap_matrix(a, c) @ np.kron(M, np.eye(c)) @ swap_matrix(c, b)
    assert np.allclose(lhs, np.kron(np.eye(c), M), atol=TOL, rtol=0)
    assert np.array_equal(swap_matrix(a, b).T, swap_matrix(b, a))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.data())
def test_structure_vector_evaluation(ks, data):
    """L ⋉ x picks entry lex(x); matches a dense multiply."""
    digits = [data.draw(st.integers(1, k)) for k in ks]
    L = data.draw(matrix(rows=1, cols=math.prod(ks)))
    got = eval_structure(L, [LogicalVector(k, i) for k, i in zip(ks, digits)])
    x = np.zeros((math.prod(ks), 1))
    x[lex_encode(digits, ks) - 1] = 1.0
    assert abs(got - float((L @ x)[0, 0])) <= TOL
    assert got == L[0, lex_encode(digits, ks) - 1]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.data())
def test_inner_sum_matches_pointwise_sum(ks, data):
    Lf = data.draw(matrix(rows=1, cols=math.prod(ks)))
    Lg = data.draw(matrix(rows=1, cols=math.prod(ks)))
    total = 0.0
    for digits in itertools.product(*(range(1, k + 1) for k in ks)):
        xs = [LogicalVector(k, i) for k, i in zip(ks, digits)]
        total += eval_structure(Lf, xs) * eval_structure(Lg, xs)
    assert abs(inner_sum(Lf, Lg) - total) <= 1e-9


@pytest.mark.parametrize("radices", [(2, 3), (2, 2, 4, 4, 4, 4), (5, 1, 7), (10, 10, 10, 10)])
def test_lex_round_trip_full(radices):
    table = lex_digits_table(radices)
    assert table.shape == (math.prod(radices), len(radices))
    for alpha, digits in enumerate(table, start=1):
        digits = tuple(int(x) for x in digits)
        assert lex_decode(alpha, radices) == digits
        assert lex_encode(digits, radices) == alpha
    assert MixedRadixIndex.from_alpha(257, (2, 2, 4, 4, 4, 4)).digits == (1, 2, 1, 1, 1, 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.data())
def test_lex_agrees_with_stp_of_logical_vectors(ks, data):
    digits = [data.draw(st.integers(1, k)) for k in ks]
    got = stp_chain(*(d(k, i) for k, i in zip(ks, digits)))
    assert np.array_equal(got, d(math.prod(ks), lex_encode(digits, ks)))
