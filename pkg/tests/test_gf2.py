from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hitprob import gf2


def naive_rref(a: np.ndarray, order: list[int]) -> tuple[np.ndarray, list[int]]:
    """Textbook Gauss-Jordan on a uint8 copy, pivoting through columns in ``order``."""
    a = a.copy() % 2
    r = 0
    pivots = []
    for c in order:
        rows = [i for i in range(r, a.shape[0]) if a[i, c]]
        if not rows:
            continue
        a[[r, rows[0]]] = a[[rows[0], r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
        if r == a.shape[0]:
            break
    return a[:r], pivots


matrices = st.tuples(st.integers(1, 12), st.integers(1, 140), st.integers(0, 2**32 - 1)).map(
    lambda t: (np.random.default_rng(t[2]).random((t[0], t[1])) < 0.3).astype(np.uint8)
)


@settings(max_examples=150, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_rref_matches_naive(a, rnd):
    order = list(range(a.shape[1]))
    rnd.shuffle(order)
    ech = gf2.echelonize(gf2.BitMatrix.from_dense(a, order))
    rows, pivots = naive_rref(a, order)
    assert ech.rank == len(pivots)
    assert ech.pivot_columns() == pivots
    got = gf2.BitMatrix(ech.rows, a.shape[1], order).to_dense()
    assert np.array_equal(got, rows)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_member_and_null_space(a):
    m = gf2.BitMatrix.from_dense(a)
    ech = gf2.echelonize(gf2.BitMatrix.from_dense(a))
    rng = np.random.default_rng(a.size)
    coeffs = rng.integers(0, 2, a.shape[0])
    v = (coeffs @ a) % 2
    ok, used = ech.member(v.astype(np.uint8), return_rows=True)
    assert ok
    recon = np.zeros(a.shape[1], dtype=np.uint8)
    for i in used:
        recon ^= gf2.BitMatrix(ech.rows[i : i + 1], a.shape[1]).to_dense()[0]
    assert np.array_equal(recon, v)
    ns = gf2.null_space(m)
    assert ns.shape == (a.shape[1] - ech.rank, a.shape[1])
    assert not ((a.astype(np.int64) @ ns.T.astype(np.int64)) % 2).any()
    if len(ns):
        assert gf2.rank(gf2.BitMatrix.from_dense(ns)) == len(ns)
    assert gf2.rank(m) == ech.rank  # rank() does not consume its argument


def test_member_outside_row_space():
    a = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    ech = gf2.echelonize(gf2.BitMatrix.from_dense(a))
    assert not ech.member([0])
    assert ech.member([0, 2])
    with pytest.raises(ValueError):
        ech.member(np.zeros(4, dtype=np.uint8))
    with pytest.raises(ValueError):
        ech.member([5])


def test_identity_and_trivial_cases():
    ech = gf2.echelonize(gf2.BitMatrix.identity(70))
    assert ech.rank == 70
    assert ech.pivot_columns() == list(range(70))
    assert gf2.rank(gf2.BitMatrix.zeros(0, 5)) == 0
    assert gf2.null_space(gf2.BitMatrix.zeros(3, 4)).shape == (4, 4)


def test_priority_decides_non_pivots():
    # one relation x0 + x1: whichever column is eliminated first is the pivot
    a = np.array([[1, 1]], dtype=np.uint8)
    assert gf2.echelonize(gf2.BitMatrix.from_dense(a, [0, 1])).non_pivot_columns() == [1]
    assert gf2.echelonize(gf2.BitMatrix.from_dense(a, [1, 0])).non_pivot_columns() == [0]


def test_bad_inputs():
    with pytest.raises(ValueError):
        gf2.BitMatrix.zeros(2, 3, col_order=[0, 0, 1])
    with pytest.raises(ValueError):
        gf2.BitMatrix(np.zeros((1, 2), dtype=np.uint64), 3)
    with pytest.raises(ValueError):
        gf2.stack([gf2.BitMatrix.zeros(1, 3), gf2.BitMatrix.zeros(1, 4)])


def test_from_coo_accumulates_mod_two():
    m = gf2.BitMatrix.from_coo(1, np.array([0, 0, 0]), np.array([2, 2, 1]), 3)
    assert m.to_dense().tolist() == [[0, 1, 0]]


@pytest.mark.parametrize("seed", [0, 1])
def test_determinism_across_threads_and_row_order(seed):
    rng = np.random.default_rng(seed)
    a = (rng.random((300, 500)) < 0.05).astype(np.uint8)
    order = rng.permutation(500)
    results = []
    for threads in (1, 2, gf2.max_threads()):
        for perm in (np.arange(300), rng.permutation(300)):
            ech = gf2.echelonize(gf2.BitMatrix.from_dense(a[perm], order), threads=threads)
            results.append((ech.pivot_columns(), ech.rows.tobytes()))
    assert all(r == results[0] for r in results)
