"""Hit subspaces, admissible bases, weight quotients and the Kameko map.

Sq^k preserves the exact support of a monomial, so ``P_n`` splits as an
A-module into the direct sum of ``P_S`` over subsets ``S`` of the variables,
and ``P_S`` with ``|S| = k`` is isomorphic to ``P_k^+`` (all exponents
positive) by an order-preserving relabelling.  The hit matrix is therefore
block diagonal, and one elimination of ``(P_k^+)_d`` per ``k`` serves every
support of that size.  Column priority inside a block is descending monomial
order, so the non-pivot columns are exactly the admissible monomials.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np

from . import gf2
from .polyalg import MAX_VARS, Monomial, Polynomial, as_polynomial, sq_monomial
from .weights import WeightVector, minimal_spike, mu, order_key, weight_degree, weight_vector

Exps = tuple[int, ...]


def monomials_of_degree(n: int, d: int) -> list[Exps]:
    """All exponent tuples of length ``n`` summing to ``d`` (stars and bars)."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + n - 2 - prev)
        out.append(tuple(exps))
    return out


def plus_monomials(k: int, d: int) -> list[Exps]:
    """Exponent tuples of length ``k`` with every entry positive, summing to ``d``."""
    if d < k:
        return []
    return [tuple(e + 1 for e in m) for m in monomials_of_degree(k, d - k)]


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"need 1 <= n <= {MAX_VARS}, got {n}")


@dataclass(frozen=True)
class DegreeBasis:
    """All monomials of ``(P_n)_d`` in increasing monomial order."""

    n: int
    d: int
    monomials: tuple[Monomial, ...]
    index: dict[Exps, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.monomials)


@lru_cache(maxsize=64)
def degree_basis(n: int, d: int) -> DegreeBasis:
    _check_n(n)
    if d < 0:
        raise ValueError("degree must be non-negative")
    mons = tuple(Monomial(m) for m in sorted(monomials_of_degree(n, d), key=order_key))
    return DegreeBasis(n, d, mons, {m: i for i, m in enumerate(mons)})


def generator_degrees(d: int, s: int | None = None, all_squares: bool = False) -> list[int]:
    """The ``j`` with ``Sq^j`` used as row generators in degree ``d``.

    ``s`` truncates to ``j < 2^s`` (``None`` means no truncation).  By default
    only ``j = 2^i`` are used: every ``Sq^j`` with ``j < 2^s`` is a sum of
    products whose leftmost factor is some ``Sq^{2^i}`` with ``2^i <= j``, so
    the spans agree.  ``all_squares`` uses every ``j`` for cross-checking.
    """
    bound = d if s is None else min(d, (1 << s) - 1)
    if all_squares:
        return list(range(1, bound + 1))
    return [1 << i for i in range(bound.bit_length()) if (1 << i) <= bound]


class PlusBlock:
    """Echelonized hit relations on ``(P_k^+)_d``.

    ``monomials`` is in descending order, so the column label is also the
    pivot priority.
    """

    def __init__(self, k: int, d: int, s: int | None = None, all_squares: bool = False, threads: int | None = None):
        self.k, self.d, self.s, self.all_squares = k, d, s, all_squares
        mons = sorted(plus_monomials(k, d), key=order_key, reverse=True)
        self.monomials: list[Exps] = mons
        self.index = {m: i for i, m in enumerate(mons)}
        r_idx: list[int] = []
        c_idx: list[int] = []
        nrows = 0
        for j in generator_degrees(d, s, all_squares):
            for y in plus_monomials(k, d - j):
                terms = sq_monomial(j, y)
                if not terms:
                    continue
                for t in terms:
                    c_idx.append(self.index[t])
                r_idx.extend([nrows] * len(terms))
                nrows += 1
        self.generator_rows = nrows
        m = gf2.BitMatrix.from_coo(nrows, np.asarray(r_idx), np.asarray(c_idx), len(mons))
        self.echelon = gf2.echelonize(m, threads=threads)

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def admissible(self) -> list[Exps]:
        return [self.monomials[c] for c in self.echelon.non_pivot_columns()]

    def reduce(self, terms: Iterable[Exps]) -> list[Exps]:
        return [self.monomials[c] for c in self.echelon.reduce(self.index[t] for t in terms)]

    def is_pivot(self, m: Exps) -> bool:
        return self.echelon.is_pivot(self.index[m])

    def __repr__(self) -> str:
        return f"PlusBlock(k={self.k}, d={self.d}, s={self.s}, rank={self.rank}, cols={len(self.monomials)})"


@lru_cache(maxsize=256)
def plus_block(k: int, d: int, s: int | None = None, all_squares: bool = False) -> PlusBlock:
    if s is not None and (1 << s) > d:
        s = None  # no generator of degree <= d is cut off
    return PlusBlock(k, d, s, all_squares)


def _support(m: Sequence[int]) -> tuple[tuple[int, ...], Exps]:
    S = tuple(j for j, a in enumerate(m) if a)
    return S, tuple(m[j] for j in S)


def _embed(S: Sequence[int], z: Sequence[int], n: int) -> Exps:
    out = [0] * n
    for j, a in zip(S, z):
        out[j] = a
    return tuple(out)


class HitSpace:
    """``(A_s^+ P_n)_d`` as a direct sum of support blocks.

    ``s = None`` gives the full hit subspace.
    """

    def __init__(self, n: int, d: int, s: int | None = None, all_squares: bool = False, threads: int | None = None):
        _check_n(n)
        if d < 0:
            raise ValueError("degree must be non-negative")
        if s is not None and s < 0:
            raise ValueError("s must be non-negative")
        self.n, self.d, self.s, self.all_squares = n, d, s, all_squares
        self._threads = threads
        self._blocks: dict[int, PlusBlock] = {}

    def block(self, k: int) -> PlusBlock:
        b = self._blocks.get(k)
        if b is None:
            if self._threads is None:
                b = plus_block(k, self.d, self.s, self.all_squares)
            else:
                s = None if self.s is not None and (1 << self.s) > self.d else self.s
                b = PlusBlock(k, self.d, s, self.all_squares, threads=self._threads)
            self._blocks[k] = b
        return b

    @property
    def rank(self) -> int:
        return sum(comb(self.n, k) * self.block(k).rank for k in range(1, min(self.n, self.d) + 1))

    @property
    def dimension(self) -> int:
        return comb(self.d + self.n - 1, self.n - 1)

    def _check(self, f: Polynomial) -> None:
        if f.n != self.n:
            raise ValueError(f"polynomial has {f.n} variables, expected {self.n}")
        if f and f.degrees() != {self.d}:
            raise ValueError(f"polynomial is not homogeneous of degree {self.d}")

    def normal_form(self, f: Polynomial | Sequence[int]) -> Polynomial:
        """The remainder of ``f``; it is a sum of non-leading (admissible) monomials."""
        f = as_polynomial(f)
        self._check(f)
        groups: dict[tuple[int, ...], list[Exps]] = defaultdict(list)
        for m in f:
            S, z = _support(m)
            groups[S].append(z)
        out: list[Exps] = []
        for S, zs in groups.items():
            if not S:
                out.append(tuple([0] * self.n))
                continue
            out.extend(_embed(S, z, self.n) for z in self.block(len(S)).reduce(zs))
        return Polynomial(self.n, out)

    def contains(self, f: Polynomial | Sequence[int], omega: Sequence[int] | None = None) -> bool:
        """Membership in the space, or in the space plus ``P_n^-(omega)``.

        Monomials of weight below ``omega`` form a tail of the pivot order, so
        ``f`` lies in the augmented span iff its remainder only involves them.
        """
        rem = self.normal_form(f)
        if omega is None:
            return not rem
        w = WeightVector(omega)
        return all(weight_vector(m) < w for m in rem)

    def is_leading(self, x: Sequence[int]) -> bool:
        """True iff ``x`` is the largest term of some element of the space."""
        if len(x) != self.n or sum(x) != self.d:
            raise ValueError("monomial does not belong to this degree space")
        S, z = _support(x)
        return bool(S) and self.block(len(S)).is_pivot(z)

    def __repr__(self) -> str:
        return f"HitSpace(n={self.n}, d={self.d}, s={self.s})"


@lru_cache(maxsize=64)
def hit_space(n: int, d: int, s: int | None = None, all_squares: bool = False) -> HitSpace:
    return HitSpace(n, d, s, all_squares)


def is_hit(f: Polynomial | Sequence[int]) -> bool:
    f = as_polynomial(f)
    if not f:
        return True
    if not f.is_homogeneous():
        raise ValueError("is_hit needs a homogeneous polynomial")
    return hit_space(f.n, f.degree).contains(f)


@dataclass(frozen=True)
class AdmissibleBasis:
    """Admissible monomials in increasing order, optionally restricted to one weight."""

    n: int
    d: int
    omega: WeightVector | None
    monomials: tuple[Monomial, ...]
    index: dict[Exps, int] = field(repr=False, compare=False)

    @classmethod
    def build(cls, n: int, d: int, omega: Sequence[int] | None, monomials: Iterable[Sequence[int]]) -> "AdmissibleBasis":
        mons = tuple(Monomial(m) for m in sorted({tuple(m) for m in monomials}, key=order_key))
        w = None if omega is None else WeightVector(omega)
        return cls(n, d, w, mons, {m: i for i, m in enumerate(mons)})

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)

    def __contains__(self, m: object) -> bool:
        return tuple(m) in self.index  # type: ignore[arg-type]

    @property
    def plus_mask(self) -> np.ndarray:
        return np.array([all(m) for m in self.monomials], dtype=bool)

    @property
    def zero_part(self) -> list[Monomial]:
        """Members with some exponent zero."""
        return [m for m in self.monomials if not all(m)]

    @property
    def plus_part(self) -> list[Monomial]:
        """Members with every exponent positive."""
        return [m for m in self.monomials if all(m)]

    def restrict(self, omega: Sequence[int]) -> "AdmissibleBasis":
        w = WeightVector(omega)
        return AdmissibleBasis.build(self.n, self.d, w, (m for m in self.monomials if weight_vector(m) == w))

    def coordinates(self, f: Polynomial | Sequence[int]) -> np.ndarray:
        """0/1 coordinates of the class of ``f`` (modulo hit, and ``P_n^-(omega)`` if restricted)."""
        f = as_polynomial(f)
        if self.omega is not None and any(weight_vector(m) > self.omega for m in f):
            raise ValueError(f"polynomial is not in P_{self.n}({self.omega})")
        rem = hit_space(self.n, self.d).normal_form(f)
        v = np.zeros(len(self), dtype=np.uint8)
        for m in rem:
            if self.omega is not None and weight_vector(m) < self.omega:
                continue
            i = self.index.get(m)
            if i is None:
                raise AssertionError(f"remainder term {Monomial(m)} is not in the basis")
            v[i] = 1
        return v

    def element(self, v: Sequence[int] | np.ndarray) -> Polynomial:
        """The sum of basis monomials selected by a 0/1 vector."""
        return Polynomial(self.n, (self.monomials[i] for i in np.flatnonzero(np.asarray(v) & 1)))


def cache_dir() -> Path:
    root = os.environ.get("HITPROB_CACHE_DIR")
    return Path(root) if root else Path.home() / ".cache" / "hitprob"


def _cache_path(n: int, d: int) -> Path:
    return cache_dir() / f"basis_n{n}_d{d}.txt"


def format_basis_file(basis: AdmissibleBasis) -> str:
    head = f"# n={basis.n} d={basis.d}"
    if basis.omega is not None:
        head += f" omega={basis.omega}"
    lines = [f"{head} count={len(basis)} order=omega-sigma"]
    lines += [" ".join(map(str, m)) for m in basis.monomials]
    return "\n".join(lines) + "\n"


def parse_basis_file(text: str) -> AdmissibleBasis:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("basis file lacks a header")
    meta = dict(tok.split("=", 1) for tok in lines[0][1:].split())
    n, d, count = int(meta["n"]), int(meta["d"]), int(meta["count"])
    omega = WeightVector.parse(meta["omega"]) if "omega" in meta else None
    mons = [tuple(int(a) for a in ln.split()) for ln in lines[1:] if ln.strip()]
    if len(mons) != count:
        raise ValueError(f"basis file announces {count} monomials but holds {len(mons)}")
    for m in mons:
        if len(m) != n or sum(m) != d:
            raise ValueError(f"monomial {m} does not lie in (P_{n})_{d}")
    return AdmissibleBasis.build(n, d, omega, mons)


def save_basis(basis: AdmissibleBasis, path: Path | None = None) -> Path:
    path = path or _cache_path(basis.n, basis.d)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_basis_file(basis))
    return path


def load_basis(path: Path) -> AdmissibleBasis:
    return parse_basis_file(path.read_text())


def list_cache() -> list[Path]:
    root = cache_dir()
    return sorted(root.glob("basis_*.txt")) if root.is_dir() else []


def clear_cache() -> int:
    paths = list_cache()
    for p in paths:
        p.unlink()
    return len(paths)


def _compute_admissible(n: int, d: int) -> AdmissibleBasis:
    if d == 0:
        return AdmissibleBasis.build(n, 0, None, [(0,) * n])
    hs = hit_space(n, d)
    mons: list[Exps] = []
    for k in range(1, min(n, d) + 1):
        adm = hs.block(k).admissible()
        for S in itertools.combinations(range(n), k):
            mons.extend(_embed(S, z, n) for z in adm)
    return AdmissibleBasis.build(n, d, None, mons)


def admissible_basis(n: int, d: int, use_cache: bool = False) -> AdmissibleBasis:
    """``B_n(d)``: the monomials that are not leading terms of hit-plus-lower elements."""
    _check_n(n)
    if d < 0:
        raise ValueError("degree must be non-negative")
    if use_cache:
        path = _cache_path(n, d)
        if path.exists():
            try:
                return load_basis(path)
            except (ValueError, KeyError):
                pass  # stale or damaged; recompute below
        basis = _admissible_cached(n, d)
        save_basis(basis, path)
        return basis
    return _admissible_cached(n, d)


@lru_cache(maxsize=64)
def _admissible_cached(n: int, d: int) -> AdmissibleBasis:
    return _compute_admissible(n, d)


def qp_dimension(n: int, d: int) -> int:
    _check_n(n)
    if d == 0:
        return 1
    if mu(d) > n:
        return 0
    hs = hit_space(n, d)
    return hs.dimension - hs.rank


def _as_weight(omega: Sequence[int] | str) -> WeightVector:
    if isinstance(omega, str):
        return WeightVector.parse(omega)
    return WeightVector(omega)


def weight_quotient_basis(n: int, omega: Sequence[int] | str, use_cache: bool = False) -> AdmissibleBasis:
    """``B_n(omega)``, a basis of ``QP_n(omega)``.

    ``QP_n(omega) = P_n(omega) / (hit ∩ P_n(omega) + P_n^-(omega))``.  Echelon
    rows whose leading term has weight at most ``omega`` span the hit part
    inside ``P_n(omega)``, and the lower-weight monomials are a tail of the
    pivot order, so the basis is the admissibles of weight exactly ``omega``.
    """
    w = _as_weight(omega)
    if not w:
        raise ValueError("empty weight vector")
    if max(w) > n:
        raise ValueError(f"weight vector {w} has an entry above n = {n}")
    return admissible_basis(n, weight_degree(w), use_cache=use_cache).restrict(w)


def kameko_psi(x: Sequence[int]) -> Monomial | None:
    """``y`` when ``x = x_1...x_n y^2``, else ``None`` (the zero polynomial)."""
    if all(a & 1 for a in x):
        return Monomial((a - 1) >> 1 for a in x)
    return None


def kameko_psi_poly(f: Polynomial) -> Polynomial:
    return Polynomial(f.n, (y for y in map(kameko_psi, f) if y is not None))


def kameko_section(y: Sequence[int]) -> Monomial:
    """``y -> x_1...x_n y^2``, a one-sided inverse of :func:`kameko_psi`."""
    return Monomial(2 * a + 1 for a in y)


@dataclass
class KamekoMap:
    """The induced map ``(QP_n)_{2m+n} -> (QP_n)_m`` on admissible bases."""

    source: AdmissibleBasis
    target: AdmissibleBasis
    matrix: gf2.BitMatrix  # len(target) x len(source)
    kernel: list[Polynomial]

    @property
    def rank(self) -> int:
        return gf2.rank(self.matrix)

    @property
    def is_surjective(self) -> bool:
        return self.rank == len(self.target)


def kameko_matrix(n: int, m: int, use_cache: bool = False) -> KamekoMap:
    d = 2 * m + n
    if mu(d) > n:
        raise ValueError(f"mu({d}) > {n}: both sides vanish")
    source = admissible_basis(n, d, use_cache=use_cache)
    target = admissible_basis(n, m, use_cache=use_cache)
    cols = np.zeros((len(target), len(source)), dtype=np.uint8)
    for j, b in enumerate(source.monomials):
        y = kameko_psi(b)
        if y is not None:
            cols[:, j] = target.coordinates(y)
    mat = gf2.BitMatrix.from_dense(cols)
    kernel = [source.element(v) for v in gf2.null_space(mat)]
    return KamekoMap(source, target, mat, kernel)


def relation_check(
    f: Polynomial | Sequence[int],
    g: Polynomial | Sequence[int],
    s: int | None = None,
    omega: Sequence[int] | None = None,
    all_squares: bool = False,
) -> bool:
    """``f - g`` in ``A_s^+ P_n + P_n^-(omega)``.

    ``s = None`` means no truncation and ``omega = None`` means no
    lower-weight term is discarded; ``s = 0`` leaves only ``P_n^-(omega)``.
    """
    f, g = as_polynomial(f), as_polynomial(g)
    if f.n != g.n:
        raise ValueError(f"variable count mismatch: {f.n} != {g.n}")
    degs = f.degrees() | g.degrees()
    if omega is not None:
        degs.add(weight_degree(WeightVector(omega)))
    if len(degs) > 1:
        raise ValueError(f"degree mismatch: {sorted(degs)}")
    h = f + g
    if not h:
        return True
    return hit_space(h.n, h.degree, s, all_squares).contains(h, omega)


def is_strictly_inadmissible(x: Sequence[int]) -> bool:
    """``x`` equals a sum of smaller monomials modulo ``A_s^+ P_n``, ``s`` the length of its weight vector."""
    x = Monomial(x)
    s = len(weight_vector(x))
    if s == 0:
        return False
    return hit_space(x.n, x.degree, s).is_leading(x)


def is_admissible(x: Sequence[int]) -> bool:
    x = Monomial(x)
    return not hit_space(x.n, x.degree).is_leading(x)


def singer_bound(d: int, n: int) -> WeightVector:
    """Weight vector of the minimal spike; monomials of smaller weight are hit."""
    return weight_vector(minimal_spike(d, n))
