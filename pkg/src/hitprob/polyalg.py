"""Monomials and polynomials over F2 with the Steenrod-square action.

Monomials are exponent tuples; variable ``x_j`` of the text grammar is
position ``j - 1``.  Polynomials are frozensets of such tuples, since every
coefficient is 0 or 1.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence

MAX_VARS = 8
MAX_EXPONENT = 2**32 - 1

Exps = tuple[int, ...]


class ParseError(ValueError):
    """Malformed monomial or polynomial text; ``pos`` is the offending offset."""

    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class Monomial(tuple):
    """Exponent vector ``(a_1, ..., a_n)`` of ``x_1^{a_1} ... x_n^{a_n}``."""

    __slots__ = ()

    def __new__(cls, exps: Iterable[int]) -> "Monomial":
        self = super().__new__(cls, (int(a) for a in exps))
        if not 1 <= len(self) <= MAX_VARS:
            raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {len(self)}")
        for a in self:
            if a < 0 or a > MAX_EXPONENT:
                raise ValueError(f"exponent out of range: {a}")
        return self

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def var(cls, j: int, n: int, power: int = 1) -> "Monomial":
        """``x_j^power`` in ``n`` variables (1-based ``j``)."""
        if not 1 <= j <= n:
            raise ValueError(f"variable index {j} out of range 1..{n}")
        exps = [0] * n
        exps[j - 1] = power
        return cls(exps)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def __mul__(self, other: object) -> "Monomial":  # type: ignore[override]
        if isinstance(other, Monomial):
            _check_n(self.n, other.n)
            return Monomial(a + b for a, b in zip(self, other))
        return NotImplemented

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(a * k for a in self)

    def __str__(self) -> str:
        return format_monomial(self)

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)!r})"


class Polynomial:
    """An element of F2[x_1..x_n]: a finite set of monomials."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Iterable[Sequence[int]] = ()) -> None:
        if not 1 <= n <= MAX_VARS:
            raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {n}")
        acc: set[Exps] = set()
        for t in terms:
            t = tuple(t)
            if len(t) != n:
                raise ValueError(f"term {t} has {len(t)} variables, expected {n}")
            acc ^= {t}
        self.n = n
        self.terms: frozenset[Exps] = frozenset(acc)

    @classmethod
    def _raw(cls, n: int, terms: frozenset[Exps]) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def from_monomial(cls, m: Sequence[int]) -> "Polynomial":
        return cls._raw(len(m), frozenset([tuple(m)]))

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, frozenset())

    def monomials(self) -> list[Monomial]:
        """Terms in descending lexicographic exponent order."""
        return [Monomial(t) for t in sorted(self.terms, reverse=True)]

    def degrees(self) -> set[int]:
        return {sum(t) for t in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous polynomial; raises otherwise (0 for zero)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else 0

    def __iter__(self) -> Iterator[Exps]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __contains__(self, m: object) -> bool:
        return tuple(m) in self.terms  # type: ignore[arg-type]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        _check_n(self.n, other.n)
        return Polynomial._raw(self.n, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {sorted(self.terms)!r})"


def _check_n(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"variable count mismatch: {a} != {b}")


def as_polynomial(f: Polynomial | Sequence[int]) -> Polynomial:
    if isinstance(f, Polynomial):
        return f
    return Polynomial.from_monomial(f)


# -- Steenrod squares ---------------------------------------------------------


def binom_mod2(a: int, i: int) -> int:
    """C(a, i) mod 2 by Lucas: odd iff the bits of ``i`` are a subset of ``a``."""
    if i < 0 or i > a:
        return 0
    return 1 if (i & ~a) == 0 else 0


def sq_monomial(k: int, exps: Sequence[int]) -> list[Exps]:
    """Terms of ``Sq^k`` applied to one monomial.

    By the Cartan formula and ``Sq^i(x^a) = C(a, i) x^{a+i}`` the result is the
    sum over splittings ``k = i_1 + ... + i_n`` with each ``i_j`` a bit-subset
    of ``a_j``.  Distinct splittings give distinct monomials, so nothing cancels.
    """
    n = len(exps)
    out: list[Exps] = []
    # suffix sums bound how much of k the remaining variables can absorb
    room = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        room[j] = room[j + 1] + exps[j]
    if k > room[0]:
        return out
    prefix = [0] * n

    def rec(j: int, rem: int) -> None:
        if j == n:
            if rem == 0:
                out.append(tuple(prefix))
            return
        a = exps[j]
        lo = rem - room[j + 1]
        # bit-subsets of a that are <= rem, in descending order
        i = _largest_submask_at_most(a, rem)
        while True:
            if i >= lo:
                prefix[j] = a + i
                rec(j + 1, rem - i)
            if i == 0:
                break
            i = (i - 1) & a
            if i < lo:
                break

    rec(0, k)
    return out


def _largest_submask_at_most(a: int, bound: int) -> int:
    if a <= bound:
        return a
    best = 0
    # greedy from the top bit keeps the result <= bound
    for b in range(a.bit_length() - 1, -1, -1):
        bit = 1 << b
        if a & bit and best | bit <= bound:
            best |= bit
    return best


def sq(k: int, f: Polynomial | Sequence[int]) -> Polynomial:
    """``Sq^k(f)``; acts term by term."""
    f = as_polynomial(f)
    if k < 0:
        raise ValueError("Sq^k needs k >= 0")
    if k == 0:
        return f
    acc: set[Exps] = set()
    for t in f.terms:
        acc.symmetric_difference_update(sq_monomial(k, t))
    return Polynomial._raw(f.n, frozenset(acc))


def sq_total(f: Polynomial | Sequence[int]) -> Polynomial:
    """Total square ``Sq = sum_k Sq^k``."""
    f = as_polynomial(f)
    acc = Polynomial.zero(f.n)
    for k in range(max(f.degrees(), default=0) + 1):
        acc = acc + sq(k, f)
    return acc


# -- products and substitutions ------------------------------------------------


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_n(f.n, g.n)
    acc: set[Exps] = set()
    for s in f.terms:
        for t in g.terms:
            acc ^= {tuple(a + b for a, b in zip(s, t))}
    return Polynomial._raw(f.n, frozenset(acc))


def power(f: Polynomial, k: int) -> Polynomial:
    out = Polynomial.from_monomial((0,) * f.n)
    base = f
    while k:
        if k & 1:
            out = multiply(out, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return out


class LinearSubstitution:
    """Algebra map ``P_{n_from} -> P_{n_to}`` sending each ``x_j`` to a sum of variables.

    ``images[j]`` is the set of (0-based) target variables summed to form the
    image of source variable ``j``; the empty set means ``x_j -> 0``.
    """

    __slots__ = ("n_from", "n_to", "images")

    def __init__(self, n_from: int, n_to: int, images: Sequence[Iterable[int]]) -> None:
        if len(images) != n_from:
            raise ValueError(f"need {n_from} images, got {len(images)}")
        imgs = []
        for img in images:
            s = frozenset(img)
            if any(not 0 <= t < n_to for t in s):
                raise ValueError(f"image {sorted(s)} out of range for {n_to} variables")
            imgs.append(s)
        self.n_from = n_from
        self.n_to = n_to
        self.images: tuple[frozenset[int], ...] = tuple(imgs)

    def __call__(self, f: Polynomial | Sequence[int]) -> Polynomial:
        return substitute(self, f)

    def __repr__(self) -> str:
        return f"LinearSubstitution({self.n_from}, {self.n_to}, {[sorted(s) for s in self.images]})"


def _power_of_sum(targets: Sequence[int], a: int, n: int) -> dict[Exps, int]:
    """Terms of ``(sum_{t in targets} y_t)^a`` mod 2.

    Multinomial coefficients mod 2 are odd exactly when the parts split the bits
    of ``a`` disjointly, so each bit of ``a`` is handed to one target.
    """
    if a == 0:
        return {(0,) * n: 1}
    if not targets:
        return {}
    bits = [1 << b for b in range(a.bit_length()) if a >> b & 1]
    terms: dict[Exps, int] = {}
    parts = [[0] * n]
    for bit in bits:
        nxt = []
        for p in parts:
            for t in targets:
                q = p.copy()
                q[t] += bit
                nxt.append(q)
        parts = nxt
    for p in parts:
        terms[tuple(p)] = 1
    return terms


def substitute(s: LinearSubstitution, f: Polynomial | Sequence[int]) -> Polynomial:
    f = as_polynomial(f)
    _check_n(s.n_from, f.n)
    n = s.n_to
    acc: set[Exps] = set()
    for term in f.terms:
        partial: set[Exps] = {(0,) * n}
        for j, a in enumerate(term):
            if a == 0:
                continue
            factor = _power_of_sum(sorted(s.images[j]), a, n)
            nxt: set[Exps] = set()
            for p in partial:
                for q in factor:
                    nxt ^= {tuple(u + v for u, v in zip(p, q))}
            partial = nxt
            if not partial:
                break
        acc ^= partial
    return Polynomial._raw(n, frozenset(acc))


def rho(i: int, n: int) -> LinearSubstitution:
    """Generator ``rho_i`` of GL_n: swap ``x_i, x_{i+1}`` for ``i < n``; ``x_1 -> x_1 + x_2`` for ``i = n``."""
    if not 1 <= i <= n:
        raise ValueError(f"rho index {i} out of range 1..{n}")
    images: list[set[int]] = [{j} for j in range(n)]
    if i < n:
        images[i - 1], images[i] = {i}, {i - 1}
    elif n >= 2:
        images[0] = {0, 1}
    return LinearSubstitution(n, n, images)


def f_map(i: int, n: int) -> LinearSubstitution:
    """``f_i: P_{n-1} -> P_n`` skipping ``x_i`` (1-based ``i``)."""
    if not 1 <= i <= n:
        raise ValueError(f"f index {i} out of range 1..{n}")
    return LinearSubstitution(n - 1, n, [{j} if j < i - 1 else {j + 1} for j in range(n - 1)])


def p_map(i: int, I: Sequence[int], n: int) -> LinearSubstitution:
    """``p_(i;I): P_n -> P_{n-1}``; ``x_i`` goes to ``sum_{s in I} x_{s-1}``."""
    if not 1 <= i <= n or any(not i < s <= n for s in I):
        raise ValueError(f"bad index pair ({i}; {tuple(I)}) for n={n}")
    images: list[set[int]] = []
    for j in range(1, n + 1):
        if j < i:
            images.append({j - 1})
        elif j == i:
            images.append({s - 2 for s in I})
        else:
            images.append({j - 2})
    return LinearSubstitution(n, n - 1, images)


def x_omit(J: Iterable[int], n: int) -> Monomial:
    """``X_J``: product of the variables whose (1-based) index is not in ``J``."""
    J = set(J)
    for j in J:
        if not 1 <= j <= n:
            raise ValueError(f"index {j} out of range 1..{n}")
    return Monomial(0 if j in J else 1 for j in range(1, n + 1))


# -- text grammar ---------------------------------------------------------------

_FACTOR = re.compile(r"x_?(?:\{(\d+)\}|(\d+))(?:\^(?:\{(\d+)\}|(\d+)))?")


def parse_monomial(text: str, n: int | None = None) -> Monomial:
    """Parse ``x_1^{15}x_2^{7}x_3^{3}``, ``x1^3*x2`` or ``1``.

    Unmentioned variables get exponent 0.  With ``n`` omitted the variable
    count is the largest index seen.
    """
    s = text.strip()
    if s == "1":
        if n is None:
            raise ParseError("constant 1 needs an explicit variable count", text, 0)
        return Monomial.one(n)
    exps: dict[int, int] = {}
    pos = 0
    offset = len(text) - len(text.lstrip())
    while pos < len(s):
        if s[pos] in "* \t":
            pos += 1
            continue
        m = _FACTOR.match(s, pos)
        if m is None:
            raise ParseError("expected a factor like x_3^{2}", text, offset + pos)
        j = int(m.group(1) or m.group(2))
        e = int(m.group(3) or m.group(4) or 1)
        if j < 1:
            raise ParseError("variable indices start at 1", text, offset + pos)
        if n is not None and j > n:
            raise ParseError(f"variable x_{j} exceeds n={n}", text, offset + pos)
        if j in exps:
            raise ParseError(f"duplicate variable x_{j}", text, offset + pos)
        exps[j] = e
        pos = m.end()
    if not exps:
        raise ParseError("empty monomial", text, offset)
    size = n if n is not None else max(exps)
    return Monomial(exps.get(j, 0) for j in range(1, size + 1))


def parse_polynomial(text: str, n: int | None = None) -> Polynomial:
    """Parse ``+``-separated monomials; ``0`` is the zero polynomial."""
    parts = text.split("+")
    if text.strip() == "0":
        if n is None:
            raise ParseError("zero needs an explicit variable count", text, 0)
        return Polynomial.zero(n)
    monos = []
    pos = 0
    for part in parts:
        try:
            monos.append(parse_monomial(part, n))
        except ParseError as err:
            raise ParseError(str(err).split(" at position")[0], text, pos + err.pos) from None
        pos += len(part) + 1
    size = n if n is not None else max(m.n for m in monos)
    return Polynomial(size, (tuple(m) + (0,) * (size - m.n) for m in monos))


def format_monomial(m: Sequence[int]) -> str:
    """Appendix style: ``x_1^{15}x_2^{7}x_3``; the constant monomial is ``1``."""
    out = []
    for j, a in enumerate(m, start=1):
        if a == 1:
            out.append(f"x_{j}")
        elif a:
            out.append(f"x_{j}^{{{a}}}")
    return "".join(out) or "1"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    return " + ".join(format_monomial(t) for t in sorted(f.terms, reverse=True))
