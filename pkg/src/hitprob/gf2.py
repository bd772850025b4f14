"""Bit-packed exact linear algebra over GF(2).

Rows are packed into ``uint64`` words.  Columns are physically stored in
pivot-priority order: position 0 holds the column that is eliminated first.
The caller supplies that order as ``col_order`` (a list of column labels), so
"pivot on the largest monomial" is a property of the matrix, not of the data.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numba
import numpy as np
from numba import njit, prange

WORD = 64

# the bundled TBB is too old for numba; skip it instead of warning on every run
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


def n_words(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def max_threads() -> int:
    return numba.config.NUMBA_NUM_THREADS


@njit(cache=True, parallel=True)
def _rref_kernel(a, ncols):  # pragma: no cover - compiled
    nrows, nw = a.shape
    pivots = np.empty(min(nrows, ncols), np.int64)
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        w = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        p = -1
        for r in range(rank, nrows):
            if a[r, w] & bit:
                p = r
                break
        if p < 0:
            continue
        # rows at or below `rank` vanish on every column before c
        if p != rank:
            for k in range(w, nw):
                t = a[p, k]
                a[p, k] = a[rank, k]
                a[rank, k] = t
        for r in prange(nrows):
            if r != rank and (a[r, w] & bit):
                for k in range(w, nw):
                    a[r, k] ^= a[rank, k]
        pivots[rank] = c
        rank += 1
    return rank, pivots[:rank].copy()


def _positions_of(v: np.ndarray, cols: int) -> np.ndarray:
    bits = np.unpackbits(v.view(np.uint8), bitorder="little")
    return np.flatnonzero(bits[:cols])


def _pack(positions: Iterable[int], cols: int) -> np.ndarray:
    v = np.zeros(n_words(cols), dtype=np.uint64)
    pos = np.fromiter(positions, dtype=np.int64)
    if pos.size:
        if pos.min() < 0 or pos.max() >= cols:
            raise ValueError("column index out of range")
        # positions must be distinct; GF(2) sums of repeated entries are the caller's job
        np.bitwise_or.at(v, pos >> 6, np.left_shift(np.uint64(1), (pos & 63).astype(np.uint64)))
    return v


class BitMatrix:
    """Dense GF(2) matrix with an attached column priority.

    ``data[r]`` holds row ``r`` with column label ``col_order[p]`` at bit ``p``.
    """

    __slots__ = ("data", "cols", "col_order", "_position")

    def __init__(self, data: np.ndarray, cols: int, col_order: Sequence[int] | None = None) -> None:
        data = np.ascontiguousarray(data, dtype=np.uint64)
        if data.ndim != 2 or data.shape[1] != n_words(cols):
            raise ValueError(f"data shape {data.shape} does not fit {cols} columns")
        order = np.arange(cols, dtype=np.int64) if col_order is None else np.asarray(col_order, dtype=np.int64)
        if order.shape != (cols,) or (cols and not np.array_equal(np.sort(order), np.arange(cols))):
            raise ValueError("col_order must be a permutation of the columns")
        tail = cols % WORD
        if tail and data.shape[0] and np.any(data[:, -1] >> np.uint64(tail)):
            raise ValueError("padding bits beyond the last column must be zero")
        position = np.empty(cols, dtype=np.int64)
        position[order] = np.arange(cols, dtype=np.int64)
        self.data = data
        self.cols = cols
        self.col_order = order
        self._position = position

    @classmethod
    def zeros(cls, rows: int, cols: int, col_order: Sequence[int] | None = None) -> "BitMatrix":
        return cls(np.zeros((rows, n_words(cols)), dtype=np.uint64), cols, col_order)

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls.from_row_supports([[i] for i in range(k)], k)

    @classmethod
    def from_row_supports(
        cls, rows: Sequence[Iterable[int]], cols: int, col_order: Sequence[int] | None = None
    ) -> "BitMatrix":
        """Build from the set of nonzero column labels of each row."""
        m = cls.zeros(len(rows), cols, col_order)
        r_idx: list[int] = []
        c_idx: list[int] = []
        for r, support in enumerate(rows):
            for c in support:
                r_idx.append(r)
                c_idx.append(c)
        m._set_bits(np.asarray(r_idx, dtype=np.int64), np.asarray(c_idx, dtype=np.int64))
        return m

    @classmethod
    def from_coo(
        cls, rows: int, r_idx: np.ndarray, c_idx: np.ndarray, cols: int, col_order: Sequence[int] | None = None
    ) -> "BitMatrix":
        m = cls.zeros(rows, cols, col_order)
        m._set_bits(np.asarray(r_idx, dtype=np.int64), np.asarray(c_idx, dtype=np.int64))
        return m

    @classmethod
    def from_dense(cls, a: np.ndarray, col_order: Sequence[int] | None = None) -> "BitMatrix":
        a = np.asarray(a) & 1
        r_idx, c_idx = np.nonzero(a)
        return cls.from_coo(a.shape[0], r_idx, c_idx, a.shape[1], col_order)

    def _set_bits(self, r_idx: np.ndarray, c_idx: np.ndarray) -> None:
        if not r_idx.size:
            return
        if c_idx.min() < 0 or c_idx.max() >= self.cols:
            raise ValueError("column index out of range")
        pos = self._position[c_idx]
        flat = self.data.reshape(-1)
        words = r_idx * self.data.shape[1] + (pos >> 6)
        # XOR so that repeated entries cancel, as sums over GF(2) should
        np.bitwise_xor.at(flat, words, np.left_shift(np.uint64(1), (pos & 63).astype(np.uint64)))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_dense(self) -> np.ndarray:
        """0/1 array indexed by column label."""
        bits = np.unpackbits(self.data.view(np.uint8), axis=1, bitorder="little")[:, : self.cols]
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        out[:, self.col_order] = bits
        return out

    def pack(self, v: Iterable[int] | np.ndarray) -> np.ndarray:
        """Pack a vector given as a 0/1 array over labels or as an iterable of set labels."""
        if isinstance(v, np.ndarray) and v.dtype != np.uint64:
            if v.shape != (self.cols,):
                raise ValueError(f"vector of length {v.shape} does not match {self.cols} columns")
            labels = np.flatnonzero(v & 1)
        else:
            labels = np.fromiter(v, dtype=np.int64)
        return _pack(self._position[labels], self.cols) if labels.size else _pack((), self.cols)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


class EchelonForm:
    """Reduced row echelon form of a :class:`BitMatrix` under its column priority."""

    __slots__ = ("rows", "pivots", "cols", "col_order", "_position", "_pivot_row")

    def __init__(self, rows: np.ndarray, pivots: np.ndarray, cols: int, col_order: np.ndarray) -> None:
        self.rows = rows
        self.pivots = pivots  # positions, increasing
        self.cols = cols
        self.col_order = col_order
        position = np.empty(cols, dtype=np.int64)
        position[col_order] = np.arange(cols, dtype=np.int64)
        self._position = position
        pivot_row = np.full(cols, -1, dtype=np.int64)
        pivot_row[pivots] = np.arange(len(pivots), dtype=np.int64)
        self._pivot_row = pivot_row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def pivot_columns(self) -> list[int]:
        return self.col_order[self.pivots].tolist()

    def is_pivot(self, label: int) -> bool:
        return bool(self._pivot_row[self._position[label]] >= 0)

    def reduce_packed(self, v: np.ndarray) -> np.ndarray:
        """Remainder of a packed vector (positions layout); one pass suffices in reduced form."""
        hits = self._pivot_row[_positions_of(v, self.cols)]
        hits = hits[hits >= 0]
        if not hits.size:
            return v.copy()
        return v ^ np.bitwise_xor.reduce(self.rows[hits], axis=0)

    def reduce(self, labels: Iterable[int]) -> list[int]:
        """Remainder of the vector with the given set labels, as labels in priority order."""
        v = _pack(self._position[np.fromiter(labels, dtype=np.int64)], self.cols)
        return self.col_order[_positions_of(self.reduce_packed(v), self.cols)].tolist()

    def member(self, v: Iterable[int] | np.ndarray, return_rows: bool = False):
        """True iff ``v`` lies in the row space.

        ``v`` is a 0/1 array over column labels or an iterable of set labels.
        With ``return_rows`` also returns the indices of echelon rows summing to ``v``.
        """
        if isinstance(v, np.ndarray):
            if v.shape != (self.cols,):
                raise ValueError(f"vector of length {v.shape[0]} does not match {self.cols} columns")
            labels = np.flatnonzero(v & 1)
        else:
            labels = np.fromiter(v, dtype=np.int64)
            if labels.size and (labels.min() < 0 or labels.max() >= self.cols):
                raise ValueError("column label out of range")
        packed = _pack(self._position[labels], self.cols)
        used = self._pivot_row[_positions_of(packed, self.cols)]
        used = used[used >= 0]
        rem = self.reduce_packed(packed)
        ok = not rem.any()
        if return_rows:
            return ok, sorted(used.tolist()) if ok else None
        return ok

    def non_pivot_columns(self) -> list[int]:
        mask = np.ones(self.cols, dtype=bool)
        mask[self.pivots] = False
        return self.col_order[np.flatnonzero(mask)].tolist()

    def row_labels(self, i: int) -> list[int]:
        return self.col_order[_positions_of(self.rows[i], self.cols)].tolist()

    def __repr__(self) -> str:
        return f"EchelonForm(rank={self.rank}, cols={self.cols})"


def echelonize(m: BitMatrix, threads: int | None = None) -> EchelonForm:
    """Reduced echelon form; pivots are chosen in ``m.col_order`` priority.

    ``m`` is consumed (its storage is reduced in place).  ``threads`` bounds
    the worker count of the row-update loop; results do not depend on it.
    """
    if threads is not None:
        prev = numba.get_num_threads()
        numba.set_num_threads(max(1, min(threads, max_threads())))
    try:
        if m.rows and m.cols:
            rank, piv = _rref_kernel(m.data, m.cols)
        else:
            rank, piv = 0, np.empty(0, dtype=np.int64)
    finally:
        if threads is not None:
            numba.set_num_threads(prev)
    rows = m.data[:rank].copy()
    return EchelonForm(rows, piv, m.cols, m.col_order)


def rank(m: BitMatrix) -> int:
    return echelonize(BitMatrix(m.data.copy(), m.cols, m.col_order)).rank


def non_pivot_columns(ech: EchelonForm) -> list[int]:
    return ech.non_pivot_columns()


def member(ech: EchelonForm, v: Iterable[int] | np.ndarray) -> bool:
    return ech.member(v)


def null_space(m: BitMatrix) -> np.ndarray:
    """Basis of ``{v : m v = 0}`` as rows of a 0/1 array over column labels."""
    ech = echelonize(BitMatrix(m.data.copy(), m.cols, m.col_order))
    free = np.ones(m.cols, dtype=bool)
    free[ech.pivots] = False
    free_pos = np.flatnonzero(free)
    out = np.zeros((len(free_pos), m.cols), dtype=np.uint8)
    if not len(free_pos):
        return out
    dense = np.unpackbits(ech.rows.view(np.uint8), axis=1, bitorder="little")[:, : m.cols]
    for k, f in enumerate(free_pos):
        vec = np.zeros(m.cols, dtype=np.uint8)
        vec[f] = 1
        # each pivot variable equals the sum of its row's free entries
        vec[ech.pivots] = dense[:, f]
        out[k, m.col_order] = vec
    return out


def stack(mats: Sequence[BitMatrix]) -> BitMatrix:
    cols = mats[0].cols
    for m in mats:
        if m.cols != cols or not np.array_equal(m.col_order, mats[0].col_order):
            raise ValueError("cannot stack matrices with different columns")
    return BitMatrix(np.vstack([m.data for m in mats]), cols, mats[0].col_order)
