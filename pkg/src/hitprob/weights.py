"""Weight vectors, the monomial order, spikes and the mu function."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from enum import IntEnum
from functools import lru_cache

from .polyalg import Monomial


class WeightVector(tuple):
    """``(w_1, w_2, ...)`` with trailing zeros trimmed.

    Trimming makes plain tuple comparison agree with left-lexicographic
    comparison of the zero-padded sequences.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()) -> "WeightVector":
        vals = [int(e) for e in entries]
        if any(e < 0 for e in vals):
            raise ValueError(f"weight vector entries must be non-negative: {vals}")
        while vals and vals[-1] == 0:
            vals.pop()
        return super().__new__(cls, vals)

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """``"3,3,2,1"`` (parentheses and spaces tolerated)."""
        body = text.strip().strip("()")
        if not body:
            return cls()
        try:
            return cls(int(p) for p in body.split(","))
        except ValueError:
            raise ValueError(f"malformed weight vector {text!r}") from None

    @property
    def degree(self) -> int:
        return weight_degree(self)

    def entry(self, i: int) -> int:
        """``w_i`` (1-based), zero past the end."""
        return self[i - 1] if 0 < i <= len(self) else 0

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"WeightVector({tuple(self)!r})"


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def weight_vector(x: Sequence[int]) -> WeightVector:
    """``w_i`` counts the exponents of ``x`` with bit ``i - 1`` set."""
    top = max(x, default=0).bit_length()
    return WeightVector(sum((a >> b) & 1 for a in x) for b in range(top))


def weight_degree(w: Sequence[int]) -> int:
    return sum(e << i for i, e in enumerate(w))


def order_key(x: Sequence[int]) -> tuple[WeightVector, tuple[int, ...]]:
    """Sort key realising the monomial order: weight vector first, then exponents."""
    return weight_vector(x), tuple(x)


def compare(x: Sequence[int], y: Sequence[int]) -> Cmp:
    if len(x) != len(y):
        raise ValueError(f"variable count mismatch: {len(x)} != {len(y)}")
    if sum(x) != sum(y):
        raise ValueError(f"degree mismatch: {sum(x)} != {sum(y)}")
    kx, ky = order_key(x), order_key(y)
    if kx < ky:
        return Cmp.LT
    return Cmp.GT if kx > ky else Cmp.EQ


@lru_cache(maxsize=None)
def mu(d: int) -> int:
    """Least number of terms ``2^s - 1`` (``s > 0``) summing to ``d``."""
    if d < 0:
        raise ValueError("mu needs d >= 0")
    if d == 0:
        return 0
    best = d  # d copies of 2^1 - 1
    s = 2
    while (1 << s) - 1 <= d:
        best = min(best, 1 + mu(d - ((1 << s) - 1)))
        s += 1
    return best


def is_spike(x: Sequence[int]) -> bool:
    return all((a & (a + 1)) == 0 for a in x)


def _spike_patterns(d: int) -> list[list[int]]:
    """Exponent lists ``s_1 > ... > s_{r-1} >= s_r > 0`` with ``sum (2^{s_j} - 1) = d``."""
    found: list[list[int]] = []

    def rec(rem: int, prev: int, acc: list[int]) -> None:
        if rem == 0:
            found.append(acc.copy())
            return
        for s in range(min(prev, rem.bit_length() + 1), 0, -1):
            term = (1 << s) - 1
            if term > rem:
                continue
            if s == prev:
                # equality only allowed for the final exponent
                if rem == term:
                    found.append(acc + [s])
                continue
            acc.append(s)
            rec(rem - term, s, acc)
            acc.pop()

    rec(d, d.bit_length() + 1, [])
    return found


def minimal_spike(d: int, n: int) -> Monomial:
    """The minimal spike of degree ``d`` in ``n`` variables.

    Raises ``ValueError`` when ``mu(d) > n``; then ``(QP_n)_d = 0``.
    """
    if d < 1:
        raise ValueError("minimal spike needs d >= 1")
    if mu(d) > n:
        raise ValueError(f"mu({d}) = {mu(d)} > {n}: every monomial of degree {d} is hit")
    pats = [p for p in _spike_patterns(d) if len(p) <= n]
    if len(pats) != 1:
        raise AssertionError(f"expected a unique minimal spike of degree {d}, found {pats}")
    exps = [(1 << s) - 1 for s in pats[0]]
    return Monomial(exps + [0] * (n - len(exps)))


def spike_with_weight(w: Sequence[int], n: int) -> Monomial:
    """A spike in ``P_n`` realising a weakly decreasing weight vector ``w`` with ``w_1 <= n``."""
    w = WeightVector(w)
    if any(a < b for a, b in zip(w, w[1:])):
        raise ValueError(f"weight vector {w} is not weakly decreasing")
    if w and w[0] > n:
        raise ValueError(f"w_1 = {w[0]} exceeds n = {n}")
    # variable j gets exponent 2^{s_j} - 1 with s_j = #{i : w_i > j}
    exps = [(1 << sum(1 for e in w if e > j)) - 1 for j in range(n)]
    return Monomial(exps)
