import itertools

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from stabsplit.gf2 import (
    BitMatrix,
    kernel_basis,
    pack_rows,
    rank,
    rref_with_transform,
    solve_left,
    unpack_rows,
)


def dense_matrices(max_rows=9, max_cols=9):
    shape = st.tuples(st.integers(0, max_rows), st.integers(0, max_cols))
    return shape.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


def span_size(dense: np.ndarray) -> int:
    """Number of distinct GF(2) combinations of the rows, by enumeration."""
    rows = [int("".join(map(str, r)), 2) if r.size else 0 for r in dense]
    span = {0}
    for r in rows:
        span |= {v ^ r for v in span}
    return len(span)


def mod2(a, b):
    return (a.astype(np.int64) @ b.astype(np.int64)) & 1


def test_rank_examples():
    assert rank(BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    assert rank(BitMatrix.identity(5)) == 5
    assert rank(BitMatrix.zeros(3, 4)) == 0
    assert rank(BitMatrix.from_dense(np.zeros((0, 3), dtype=np.uint8))) == 0


def test_rref_transform_example():
    reduced, transform, pivots = rref_with_transform(
        BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    )
    assert len(pivots) == 2
    assert not reduced.to_dense()[2].any()
    assert transform.to_dense()[2].tolist() == [1, 1, 1]


def test_kernel_example():
    k = kernel_basis(BitMatrix.from_dense([[1, 1, 0], [0, 1, 1]]))
    assert k.to_dense().tolist() == [[1, 1, 1]]


def test_kernel_of_empty_matrix_is_everything():
    assert kernel_basis(BitMatrix.zeros(0, 4)) == BitMatrix.identity(4)


def test_packing_crosses_word_boundary(rng):
    dense = rng.integers(0, 2, (5, 150)).astype(np.uint8)
    packed = pack_rows(dense)
    assert packed.shape == (5, 3)
    assert np.array_equal(unpack_rows(packed, 150), dense)
    # column 64 is bit 0 of the second word
    assert np.array_equal(packed[:, 1] & np.uint64(1), dense[:, 64].astype(np.uint64))


@given(dense_matrices())
def test_rank_matches_span_enumeration(dense):
    assert 2 ** rank(BitMatrix.from_dense(dense)) == span_size(dense)


@given(dense_matrices())
def test_rank_of_transpose(dense):
    m = BitMatrix.from_dense(dense)
    assert rank(m) == rank(m.T)


@given(dense_matrices())
def test_rank_nullity(dense):
    m = BitMatrix.from_dense(dense)
    k = kernel_basis(m)
    assert rank(m) + k.rows == m.cols
    if k.rows:
        assert rank(k) == k.rows
        assert not mod2(dense, k.to_dense().T).any()


@given(dense_matrices())
def test_transform_is_invertible_and_reduces(dense):
    m = BitMatrix.from_dense(dense)
    reduced, transform, pivots = rref_with_transform(m)
    assert rank(transform) == m.rows
    assert np.array_equal(mod2(transform.to_dense(), dense), reduced.to_dense())
    red = reduced.to_dense()
    for i, c in enumerate(pivots):
        col = red[:, c]
        assert col[i] == 1 and col.sum() == 1
    assert not red[len(pivots):].any()


@given(dense_matrices(max_rows=7, max_cols=7), st.data())
def test_solve_left(dense, data):
    m = BitMatrix.from_dense(dense)
    v = np.array(data.draw(st.lists(st.integers(0, 1), min_size=m.cols, max_size=m.cols)), dtype=np.uint8)
    x = solve_left(m, v)
    in_span = any(
        np.array_equal(mod2(np.array(c, dtype=np.uint8), dense), v)
        for c in itertools.product([0, 1], repeat=m.rows)
    ) if m.rows else not v.any()
    assert (x is not None) == in_span
    if x is not None:
        assert np.array_equal(mod2(x, dense), v)
