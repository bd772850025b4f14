"""Numerical checks of the relations used to bound admissible monomials.

Each relation is instantiated in ``P_n`` for concrete parameters and tested
with :func:`hitprob.hitsolver.relation_check`.  Notation: ``X`` is the
product ``x_1 ... x_{n-1}`` in ``P_{n-1}`` (the argument of ``phi``), ``X_j``
is the product of all variables of ``P_n`` except ``x_j`` and
``I_t = (t+1, ..., n)``.  ``f ~_s g`` means ``f - g`` lies in
``A_s^+ P_n + P_n^-(omega)`` with ``omega`` the weight vector of the
left-hand side.

Relations (names are the CLI identifiers):

``hq0``     ``prod_t X_{j_t}^{2^t} ~_{b-1} phi_(i;I)(X^{2^b-1})``, ``i = min js``, ``I`` the other indices.
``bdad``    ``X_i^a X_j^b ~_2 X_i^{2^d-2} X_j`` for ``a + b = 2^d - 1``.
``bdbss2``  ``phi_(i;I)(X^{2^h-1}) X_u^{2^d-2^h} ~_{r+2} phi_(i;I u u)(X^{2^d-1})``.
``bdbss``   ``X_l^{2^l-1} x_l^{2^l} ~_l`` sum over ``u >= l`` and pairs of ``N_{l-1}`` plus the tail ``X_u`` terms.
``hq3``     ``sum_{u<d} X_u^{2^d-1} x_u^{2^d} ~_d`` sum over ``u >= d`` and pairs of ``N_{d-1}``.
``bdbss0``  ``phi_(t;I_t)(X^{2^{d-u}-1}) X_h^{2^d-2^{d-u}} x^{2^d} ~_{n-t+1} phi_(t;I_t)(X^{2^d-1}) x^{2^d}``.
``bdbss1``  ``X_n^{2^d-1} x_n^{2^d} ~_n`` sum over pairs of ``N_{n-1}`` of ``phi_(i;I u n)(X^{2^d-1}) x_n^{2^d}``.
``hq4``     ``Y_t`` is congruent to some combination of ``phi_(j;J)(X^{2^d-1}) x_j^{2^d}``, ``j < t``, ``J`` a proper subset of ``I_{t-1}``.
``bd5``     ``Y_1 ~_n 0``.
``mdcb4``   ``x ~_t f`` implies ``x y^{2^s} ~_t f y^{2^s}`` (part i) and with ``y ~_r g`` also ``x y^{2^s} ~_{s+r} f g^{2^s}`` (part ii).
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass

from . import gf2
from .hitsolver import hit_space, monomials_of_degree, relation_check
from .phi import PairIndex, enumerate_pairs, phi_apply
from .polyalg import Monomial, Polynomial, as_polynomial, parse_polynomial, sq, x_omit
from .weights import WeightVector, weight_vector

MAX_DEGREE = 40
MAX_N = 4


# -- building blocks ------------------------------------------------------------


def _X(n: int, e: int) -> Monomial:
    """``X^e`` in ``P_{n-1}``."""
    return Monomial([e] * (n - 1))


def _Xj(j: int, n: int, e: int = 1) -> Monomial:
    return x_omit([j], n) ** e


def _xj(j: int, n: int, e: int = 1) -> Monomial:
    return Monomial.var(j, n, e)


def _phi(p: PairIndex, n: int, e: int) -> Polynomial:
    y = phi_apply(p, _X(n, e))
    return Polynomial(n, [] if y is None else [y])


def _times(f: Polynomial, m: Sequence[int]) -> Polynomial:
    return Polynomial(f.n, [tuple(a + b for a, b in zip(t, m)) for t in f])


def _sum(n: int, parts: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.zero(n)
    for p in parts:
        out = out + p
    return out


def _weight_of(f: Polynomial) -> WeightVector:
    """Weight vector of the leading-weight terms of a nonzero polynomial."""
    if not f:
        raise ValueError("left-hand side vanishes")
    return max(weight_vector(m) for m in f)


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _pairs_union(h: int, u: int) -> list[PairIndex]:
    """``(i; I u u)`` for ``(i; I)`` in ``N_h``."""
    return [p.insert(u) for p in enumerate_pairs(h)]


def _related(lhs: Polynomial, rhs: Polynomial, s: int, omega: Sequence[int] | None = None) -> bool:
    omega = _weight_of(lhs) if omega is None else omega
    return relation_check(lhs, rhs, s=s, omega=omega)


# -- the relations --------------------------------------------------------------


def hq0(n: int, js: Sequence[int]) -> bool:
    js = tuple(int(j) for j in js)
    b = len(js)
    _check(n >= 2 and b >= 1, "need n >= 2 and at least one index")
    _check(all(1 <= j <= n for j in js), f"indices must lie in 1..{n}")
    i = min(js)
    p = PairIndex(i, tuple(sorted(set(js) - {i}))).validate(n)
    lhs = Monomial.one(n)
    for t, j in enumerate(js):
        lhs = lhs * _Xj(j, n, 1 << t)
    lhs = Polynomial(n, [lhs])
    return _related(lhs, _phi(p, n, (1 << b) - 1), b - 1)


def bdad(n: int, i: int, j: int, d: int, a: int, b: int) -> bool:
    _check(1 <= i <= n and 1 <= j <= n and i != j, "need distinct i, j in 1..n")
    _check(a >= 1 and b >= 1 and a + b == (1 << d) - 1, "need a, b >= 1 with a + b = 2^d - 1")
    lhs = Polynomial(n, [_Xj(i, n, a) * _Xj(j, n, b)])
    rhs = Polynomial(n, [_Xj(i, n, (1 << d) - 2) * _Xj(j, n)])
    return _related(lhs, rhs, 2)


def bdbss2(n: int, i: int, I: Sequence[int], d: int, h: int, u: int) -> bool:
    p = PairIndex(int(i), tuple(int(v) for v in I)).validate(n)
    _check(p.r < h <= d, "need r < h <= d")
    _check(p.i < u <= n, "need i < u <= n")
    lhs = _times(_phi(p, n, (1 << h) - 1), _Xj(u, n, (1 << d) - (1 << h)))
    rhs = _phi(p.insert(u), n, (1 << d) - 1)
    return _related(lhs, rhs, p.r + 2)


def bdbss(n: int, l: int) -> bool:
    _check(0 < l <= n, "need 0 < l <= n")
    e, q = (1 << l) - 1, 1 << l
    lhs = Polynomial(n, [_Xj(l, n, e) * _xj(l, n, q)])
    rhs = _sum(n, (_times(_phi(p, n, e), _xj(u, n, q)) for u in range(l, n + 1) for p in _pairs_union(l - 1, u)))
    rhs = rhs + Polynomial(n, [_Xj(u, n, e) * _xj(u, n, q) for u in range(l + 1, n + 1)])
    return _related(lhs, rhs, l)


def hq3(n: int, d: int) -> bool:
    _check(2 <= d <= n, "need 2 <= d <= n")
    e, q = (1 << d) - 1, 1 << d
    lhs = Polynomial(n, [_Xj(u, n, e) * _xj(u, n, q) for u in range(1, d)])
    rhs = _sum(n, (_times(_phi(p, n, e), _xj(u, n, q)) for u in range(d, n + 1) for p in _pairs_union(d - 1, u)))
    return _related(lhs, rhs, d)


def bdbss0(n: int, d: int, h: int, t: int, u: int, x: Sequence[int] | str = "1") -> bool:
    x = _monomial_param(x, n)
    _check(1 <= u < d - n + t, "need 1 <= u < d - n + t")
    _check(0 < t < h <= n, "need 0 < t < h <= n")
    p = PairIndex(t, tuple(range(t + 1, n + 1))).validate(n)
    xq = x ** (1 << d)
    lhs = _times(_phi(p, n, (1 << (d - u)) - 1), _Xj(h, n, (1 << d) - (1 << (d - u))) * xq)
    rhs = _times(_phi(p, n, (1 << d) - 1), xq)
    return _related(lhs, rhs, n - t + 1)


def bdbss1(n: int, d: int) -> bool:
    _check(d >= n >= 2, "need d >= n >= 2")
    e, q = (1 << d) - 1, 1 << d
    lhs = Polynomial(n, [_Xj(n, n, e) * _xj(n, n, q)])
    rhs = _sum(n, (_times(_phi(p, n, e), _xj(n, n, q)) for p in _pairs_union(n - 1, n)))
    return _related(lhs, rhs, n)


def _Y(n: int, t: int, d: int) -> Polynomial:
    p = PairIndex(t, tuple(range(t + 1, n + 1)))
    f = _phi(p, n, (1 << d) - 1)
    return _sum(n, (_times(f, _xj(u, n, 1 << d)) for u in range(t, n + 1)))


def _omega_Y(n: int, d: int) -> WeightVector:
    return weight_vector(_Xj(1, n, (1 << d) - 1) * _xj(1, n, 1 << d))


def in_span_modulo(f: Polynomial, gens: Sequence[Polynomial], s: int | None, omega: Sequence[int]) -> bool:
    """``f`` in ``span(gens) + A_s^+ P_n + P_n^-(omega)``.

    Normal forms are linear, so it suffices to solve for ``f`` in the span of
    the generators after reducing everything and dropping weight ``< omega``.
    """
    w = WeightVector(omega)
    space = hit_space(f.n, f.degree, s)

    def project(g: Polynomial) -> set[tuple[int, ...]]:
        return {m for m in space.normal_form(g) if not weight_vector(m) < w}

    target = project(f)
    if not target:
        return True
    rows = [project(g) for g in gens]
    labels = sorted(target.union(*rows))
    index = {m: k for k, m in enumerate(labels)}
    ech = gf2.echelonize(gf2.BitMatrix.from_row_supports([[index[m] for m in r] for r in rows], len(labels)))
    return ech.member([index[m] for m in target])


def hq4(n: int, t: int, d: int) -> bool:
    _check(1 < t <= n, "need 1 < t <= n")
    _check(d > n - t + 1, "need d > n - t + 1")
    e, q = (1 << d) - 1, 1 << d
    full = tuple(range(t, n + 1))  # I_{t-1}
    gens = []
    for j in range(1, t):
        for r in range(len(full)):
            for J in itertools.combinations(full, r):
                p = PairIndex(j, J)
                if p.r < n:
                    gens.append(_times(_phi(p, n, e), _xj(j, n, q)))
    return in_span_modulo(_Y(n, t, d), gens, n - t + 1, _omega_Y(n, d))


def bd5(n: int, d: int) -> bool:
    _check(d >= n >= 2, "need d >= n >= 2")
    return relation_check(_Y(n, 1, d), Polynomial.zero(n), s=n, omega=_omega_Y(n, d))


def _exponent_ok(x: Sequence[int], s: int, bound: int) -> bool:
    """At most ``bound`` variables have bit ``k`` set, for every ``k >= s``."""
    w = weight_vector(x)
    return all(w.entry(i) <= bound for i in range(s + 1, len(w) + 1))


def mdcb4(
    n: int,
    part: str,
    x: Sequence[int] | str,
    f: Polynomial | str,
    y: Sequence[int] | str,
    s: int,
    t: int = 0,
    g: Polynomial | str | None = None,
    r: int = 0,
) -> bool:
    """Check the hypotheses (raising if they fail), then the stated conclusion."""
    x, y = _monomial_param(x, n), _monomial_param(y, n)
    f = _poly_param(f, n)
    wx = weight_vector(x)
    if part == "i":
        _check(0 <= t <= s, "need 0 <= t <= s")
        _check(_exponent_ok(x, s, 1), "need omega_i(x) <= 1 for i > s")
        _check(relation_check(x, f, s=t, omega=wx), "hypothesis x ~_t f fails")
        ys = y ** (1 << s)
        lhs = Polynomial(n, [x * ys])
        return _related(lhs, _times(f, ys), t, weight_vector(x * ys))
    if part == "ii":
        _check(g is not None, "part ii needs g")
        g = _poly_param(g, n)
        _check(_exponent_ok(x, s, 0), "need omega_i(x) = 0 for i > s")
        _check(relation_check(x, f, s=s, omega=wx), "hypothesis x ~_s f fails")
        _check(relation_check(y, g, s=r, omega=weight_vector(y)), "hypothesis y ~_r g fails")
        lhs = Polynomial(n, [x * y ** (1 << s)])
        rhs = _sum(n, (_times(f, z ** (1 << s)) for z in map(Monomial, g)))
        return _related(lhs, rhs, s + r, weight_vector(x * y ** (1 << s)))
    raise ValueError(f"part must be 'i' or 'ii', got {part!r}")


# -- parameter handling ----------------------------------------------------------


def _monomial_param(v: Sequence[int] | str, n: int) -> Monomial:
    if isinstance(v, str):
        p = parse_polynomial(v, n)
        _check(len(p) == 1, f"{v!r} is not a monomial")
        return Monomial(next(iter(p)))
    m = Monomial(v)
    _check(len(m) == n, f"monomial must have {n} variables")
    return m


def _poly_param(v: Polynomial | Sequence[int] | str, n: int) -> Polynomial:
    p = parse_polynomial(v, n) if isinstance(v, str) else as_polynomial(v)
    _check(p.n == n, f"polynomial must have {n} variables")
    return p


def _int_tuple(v) -> tuple[int, ...]:
    if isinstance(v, str):
        v = v.strip().strip("()")
        return tuple(int(a) for a in v.split(",") if a.strip())
    if isinstance(v, int):
        return (v,)
    return tuple(int(a) for a in v)


def coerce_params(name: str, params: dict) -> dict:
    """Convert textual parameters (as given on the command line) to the types the checks expect."""
    ident = IDENTITIES[name]
    out = {}
    for k, v in params.items():
        if k not in ident.params:
            raise ValueError(f"{name} takes parameters {', '.join(ident.params)}; got {k!r}")
        if k in ("js", "I"):
            out[k] = _int_tuple(v)
        elif k in ("x", "y", "f", "g", "part"):
            out[k] = v
        else:
            out[k] = int(v)
    return out


# -- parameter grids -------------------------------------------------------------


def _deg_X(n: int, e: int) -> int:
    return (n - 1) * e


def _grid_hq0(n: int, D: int) -> Iterator[dict]:
    b = 1
    while _deg_X(n, (1 << b) - 1) <= D:
        for js in itertools.product(range(1, n + 1), repeat=b):
            yield dict(n=n, js=js)
        b += 1


def _grid_bdad(n: int, D: int) -> Iterator[dict]:
    d = 1
    while _deg_X(n, (1 << d) - 1) <= D:
        for i, j in itertools.permutations(range(1, n + 1), 2):
            for a in range(1, (1 << d) - 1):
                yield dict(n=n, i=i, j=j, d=d, a=a, b=(1 << d) - 1 - a)
        d += 1


def _grid_bdbss2(n: int, D: int) -> Iterator[dict]:
    d = 1
    while _deg_X(n, (1 << d) - 1) <= D:
        for p in enumerate_pairs(n):
            if p.r >= n:
                continue
            for h in range(p.r + 1, d + 1):
                for u in range(p.i + 1, n + 1):
                    if p.insert(u).r < n:
                        yield dict(n=n, i=p.i, I=p.I, d=d, h=h, u=u)
        d += 1


def _grid_bdbss(n: int, D: int) -> Iterator[dict]:
    for l in range(1, n + 1):
        if _deg_X(n, (1 << l) - 1) + (1 << l) <= D:
            yield dict(n=n, l=l)


def _grid_hq3(n: int, D: int) -> Iterator[dict]:
    for d in range(2, n + 1):
        if _deg_X(n, (1 << d) - 1) + (1 << d) <= D:
            yield dict(n=n, d=d)


def _grid_bdbss0(n: int, D: int) -> Iterator[dict]:
    for t in range(1, n):
        d = n - t + 2  # smallest d with some admissible u
        while _deg_X(n, (1 << d) - 1) <= D:
            room = (D - _deg_X(n, (1 << d) - 1)) >> d
            xs = [m for k in range(room + 1) for m in monomials_of_degree(n, k)]
            for h in range(t + 1, n + 1):
                for u in range(1, d - n + t):
                    for x in xs:
                        yield dict(n=n, d=d, h=h, t=t, u=u, x=tuple(x))
            d += 1


def _grid_bdbss1(n: int, D: int) -> Iterator[dict]:
    d = n
    while _deg_X(n, (1 << d) - 1) + (1 << d) <= D:
        yield dict(n=n, d=d)
        d += 1


def _grid_hq4(n: int, D: int) -> Iterator[dict]:
    for t in range(2, n + 1):
        d = n - t + 2
        while _deg_X(n, (1 << d) - 1) + (1 << d) <= D:
            yield dict(n=n, t=t, d=d)
            d += 1


_grid_bd5 = _grid_bdbss1


def _random_monomial(rng: random.Random, n: int, d: int) -> Monomial:
    cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
    return Monomial(b - a for a, b in zip([0] + cuts, cuts + [d]))


def _perturb(rng: random.Random, x: Monomial, t: int) -> Polynomial:
    """``x`` plus the image of some ``Sq^j``, ``0 < j < 2^t``, plus possibly a lower-weight monomial."""
    n, d = len(x), x.degree
    f = Polynomial(n, [x])
    top = min((1 << t) - 1, d)
    if top >= 1:
        j = rng.randint(1, top)
        f = f + sq(j, _random_monomial(rng, n, d - j))
    wx = weight_vector(x)
    lower = [m for m in (_random_monomial(rng, n, d) for _ in range(8)) if weight_vector(m) < wx]
    if lower:
        f = f + Polynomial(n, [lower[0]])
    return f


def _grid_mdcb4(n: int, D: int, samples: int = 12, seed: int = 0) -> Iterator[dict]:
    rng = random.Random(seed * 101 + n)
    for part in ("i", "ii"):
        made = 0
        tries = 0
        while made < samples and tries < 5000:
            tries += 1
            s = rng.randint(1, 2)
            dx = rng.randint(1, 7)
            dy = rng.randint(1, max(1, (D - dx) >> s))
            if dx + (dy << s) > D:
                continue
            x = _random_monomial(rng, n, dx)
            y = _random_monomial(rng, n, dy)
            if part == "i":
                if not _exponent_ok(x, s, 1):
                    continue
                t = rng.randint(0, s)
                yield dict(n=n, part="i", x=tuple(x), f=_perturb(rng, x, t), y=tuple(y), s=s, t=t)
            else:
                if not _exponent_ok(x, s, 0):
                    continue
                r = rng.randint(0, 2)
                yield dict(
                    n=n, part="ii", x=tuple(x), f=_perturb(rng, x, s), y=tuple(y), s=s,
                    g=_perturb(rng, y, r), r=r,
                )
            made += 1


@dataclass(frozen=True)
class Identity:
    name: str
    check: Callable[..., bool]
    grid: Callable[[int, int], Iterator[dict]]
    params: tuple[str, ...]
    min_n: int = 2


IDENTITIES: dict[str, Identity] = {
    "hq0": Identity("hq0", hq0, _grid_hq0, ("n", "js")),
    "bdad": Identity("bdad", bdad, _grid_bdad, ("n", "i", "j", "d", "a", "b")),
    "bdbss2": Identity("bdbss2", bdbss2, _grid_bdbss2, ("n", "i", "I", "d", "h", "u")),
    "bdbss": Identity("bdbss", bdbss, _grid_bdbss, ("n", "l")),
    "hq3": Identity("hq3", hq3, _grid_hq3, ("n", "d")),
    "bdbss0": Identity("bdbss0", bdbss0, _grid_bdbss0, ("n", "d", "h", "t", "u", "x")),
    "bdbss1": Identity("bdbss1", bdbss1, _grid_bdbss1, ("n", "d")),
    "hq4": Identity("hq4", hq4, _grid_hq4, ("n", "t", "d")),
    "bd5": Identity("bd5", bd5, _grid_bd5, ("n", "d")),
    "mdcb4": Identity("mdcb4", mdcb4, _grid_mdcb4, ("n", "part", "x", "f", "y", "s", "t", "g", "r"), 1),
}


def verify_identity(name: str, **params) -> bool:
    """Check one instance; raises ``ValueError`` for parameters outside the stated ranges."""
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}")
    params = coerce_params(name, params)
    n = params.get("n")
    if n is None:
        raise ValueError("parameter n is required")
    _check(IDENTITIES[name].min_n <= n <= MAX_N + 4, f"n out of range for {name}")
    return IDENTITIES[name].check(**params)


def instances(name: str, max_n: int = MAX_N, max_degree: int = MAX_DEGREE) -> Iterator[dict]:
    ident = IDENTITIES[name]
    for n in range(ident.min_n, max_n + 1):
        yield from ident.grid(n, max_degree)


@dataclass
class GridResult:
    name: str
    checked: int
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_grid(name: str, max_n: int = MAX_N, max_degree: int = MAX_DEGREE) -> GridResult:
    checked = 0
    failures = []
    for params in instances(name, max_n, max_degree):
        checked += 1
        if not IDENTITIES[name].check(**params):
            failures.append(params)
    return GridResult(name, checked, failures)
