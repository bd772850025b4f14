"""Lifting admissible monomials from P_{n-1} to P_n.

Index pairs ``(i; I)`` with ``1 <= i < i_1 < ... < i_r <= n`` and ``r < n``
label maps ``phi_(i;I): P_{n-1} -> P_n``.  ``phi_(i;())`` is the embedding
``f_i`` that skips ``x_i``; for longer ``I`` the image of a compatible
monomial is ``x_i^{2^r - 1} f_i(x)`` divided by a fixed monomial built from
the entries of ``I``.  ``Phi(B)`` collects all images of a generator set.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .hitsolver import weight_quotient_basis
from .polyalg import Monomial
from .weights import WeightVector


class PairIndex(NamedTuple):
    i: int
    I: tuple[int, ...] = ()

    @property
    def r(self) -> int:
        return len(self.I)

    def validate(self, n: int) -> "PairIndex":
        seq = (self.i,) + tuple(self.I)
        if not 1 <= self.i or any(a >= b for a, b in zip(seq, seq[1:])) or seq[-1] > n or self.r >= n:
            raise ValueError(f"({self.i}; {self.I}) is not an index pair for n = {n}")
        return self

    def insert(self, j: int) -> "PairIndex":
        """``(i; I ∪ j)``, keeping ``I`` increasing; ``j`` already present leaves it unchanged."""
        if j in self.I:
            return self
        if j <= self.i:
            raise ValueError(f"cannot insert {j} into ({self.i}; {self.I})")
        return PairIndex(self.i, tuple(sorted(self.I + (j,))))

    def union(self, js: Iterable[int]) -> "PairIndex":
        p = self
        for j in js:
            p = p.insert(j)
        return p

    def __str__(self) -> str:
        return f"({self.i};{','.join(map(str, self.I))})"


def enumerate_pairs(n: int) -> list[PairIndex]:
    """All index pairs for ``n`` variables, ordered by ``i`` then ``I`` lexicographically."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []
    for i in range(1, n + 1):
        rest = range(i + 1, n + 1)
        subsets = [c for r in range(0, n - i + 1) for c in itertools.combinations(rest, r)]
        out.extend(PairIndex(i, c) for c in sorted(subsets))
    return out


def _bit(a: int, k: int) -> int:
    return (a >> k) & 1 if k >= 0 else 0


def u_compatible(x: Sequence[int], p: PairIndex) -> int | None:
    """The ``u`` for which ``x`` in ``P_{n-1}`` is u-compatible with ``p`` (``n = len(x) + 1``), else ``None``."""
    n = len(x) + 1
    p.validate(n)
    r = p.r
    if r == 0:
        return 1
    full = (1 << r) - 1
    nu = [x[it - 2] for it in p.I]  # exponent of x_{i_t - 1}
    found = None
    for u in range(1, r + 1):
        if any(nu[t] != full for t in range(u - 1)):
            break  # condition (i) fails for this and every larger u
        if nu[u - 1] <= full:
            continue
        if not all(_bit(nu[u - 1], r - t) for t in range(1, u + 1)):
            continue
        if not all(_bit(nu[t - 1], r - t) for t in range(u + 1, r + 1)):
            continue
        if found is not None:
            raise AssertionError(f"{Monomial(x)} is compatible with {p} for two values of u")
        found = u
    return found


def x_IU(p: PairIndex, u: int, n: int) -> Monomial:
    """The divisor ``x_(I,u)``: ``x_{i_u}^{2^{r-1} + ... + 2^{r-u}}`` times ``x_{i_t}^{2^{r-t}}`` for ``t > u``."""
    r = p.r
    exps = [0] * n
    if r == 0:
        return Monomial(exps)
    exps[p.I[u - 1] - 1] = sum(1 << (r - k) for k in range(1, u + 1))
    for t in range(u + 1, r + 1):
        exps[p.I[t - 1] - 1] += 1 << (r - t)
    return Monomial(exps)


def f_embed(i: int, x: Sequence[int]) -> Monomial:
    """``f_i(x)``: the exponents of ``x`` placed on every variable except ``x_i``."""
    return Monomial(tuple(x[: i - 1]) + (0,) + tuple(x[i - 1 :]))


def phi_apply(p: PairIndex, x: Sequence[int]) -> Monomial | None:
    """``phi_(i;I)(x)`` as a monomial of ``P_n``, or ``None`` when it is zero."""
    n = len(x) + 1
    u = u_compatible(x, p)
    if u is None:
        return None
    num = list(f_embed(p.i, x))
    num[p.i - 1] += (1 << p.r) - 1
    div = x_IU(p, u, n)
    out = [a - b for a, b in zip(num, div)]
    if min(out) < 0:
        raise AssertionError(f"{Monomial(num)} is not divisible by {div}")
    return Monomial(out)


@dataclass
class PhiImage:
    zero: set[Monomial]
    plus: set[Monomial]

    @property
    def all(self) -> set[Monomial]:
        return self.zero | self.plus

    def __len__(self) -> int:
        return len(self.all)


def phi_set(B: Iterable[Sequence[int]]) -> PhiImage:
    """``Phi^0(B)``, ``Phi^+(B)`` for a set of monomials in ``P_{n-1}``."""
    B = [tuple(b) for b in B]
    if not B:
        return PhiImage(set(), set())
    n = len(B[0]) + 1
    if any(len(b) != n - 1 for b in B):
        raise ValueError("monomials must all have the same number of variables")
    zero: set[Monomial] = set()
    plus: set[Monomial] = set()
    for p in enumerate_pairs(n):
        for b in B:
            y = phi_apply(p, b)
            if y is None:
                continue
            if p.r == 0:
                zero.add(y)
            elif all(y):
                plus.add(y)
    return PhiImage(zero, plus)


@dataclass
class ConjectureReport:
    n: int
    omega: WeightVector
    source: int
    image: set[Monomial]
    target: set[Monomial]
    witnesses: list[Monomial] = field(default_factory=list)  # images that are not admissible

    @property
    def holds(self) -> bool:
        return not self.witnesses


def _basis_or_empty(n: int, omega: WeightVector) -> list[Monomial]:
    if n < 1 or max(omega) > n:
        return []  # no monomial of P_n has this weight vector
    return list(weight_quotient_basis(n, omega))


def check_conjecture(n: int, omega: Sequence[int] | str) -> ConjectureReport:
    """Test whether ``Phi(B_{n-1}(omega))`` lies inside ``B_n(omega)``."""
    if n < 2:
        raise ValueError("need n >= 2")
    w = WeightVector.parse(omega) if isinstance(omega, str) else WeightVector(omega)
    src = _basis_or_empty(n - 1, w)
    target = set(_basis_or_empty(n, w))
    image = phi_set(src).all
    witnesses = sorted(image - target)
    return ConjectureReport(n, w, len(src), image, target, witnesses)


def verify_identity(name: str, **params) -> bool:
    """Check one instance of a named relation; see :mod:`hitprob.identities`."""
    from .identities import verify_identity as _verify

    return _verify(name, **params)
