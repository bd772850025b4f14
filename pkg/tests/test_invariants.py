from __future__ import annotations

import itertools

import numpy as np
import pytest

from hitprob import gf2, invariants
from hitprob.fixtures import load_fixture
from hitprob.hitsolver import (
    AdmissibleBasis,
    admissible_basis,
    monomials_of_degree,
    plus_monomials,
    weight_quotient_basis,
)
from hitprob.invariants import InducedAction, gl_fixed, kameko_kernel_fixed, sigma_fixed, subbasis
from hitprob.polyalg import rho, sq_monomial
from hitprob.weights import WeightVector, weight_vector


class LiteralQuotient:
    """Bigint elimination of all Sq^j images, with no admissible basis and no pivot priority.

    Columns are the monomials in ``cols``; anything outside is dropped, which
    realises the quotient by lower-weight monomials when ``cols`` is a weight
    cut.
    """

    def __init__(self, cols, sources):
        self.idx = {m: i for i, m in enumerate(cols)}
        self.piv: dict[int, int] = {}
        for j, y in sources:
            v = self.vec(sq_monomial(j, y))
            v = self.reduce(v)
            if v:
                self.piv[v.bit_length() - 1] = v

    def vec(self, terms) -> int:
        v = 0
        for m in terms:
            i = self.idx.get(tuple(m))
            if i is not None:
                v ^= 1 << i
        return v

    def reduce(self, v: int) -> int:
        while v:
            r = self.piv.get(v.bit_length() - 1)
            if r is None:
                return v
            v ^= r
        return 0

    def is_zero(self, f) -> bool:
        return self.reduce(self.vec(f)) == 0

    def rank_of(self, fs) -> int:
        loc = dict(self.piv)
        r = 0
        for f in fs:
            v = self.vec(f)
            while v:
                p = v.bit_length() - 1
                if p in loc:
                    v ^= loc[p]
                else:
                    loc[p] = v
                    r += 1
                    break
        return r


def literal_qp(n: int, d: int) -> LiteralQuotient:
    cols = monomials_of_degree(n, d)
    srcs = [(j, y) for j in range(1, d + 1) for y in monomials_of_degree(n, d - j)]
    return LiteralQuotient(cols, srcs)


def brute_fixed_count(basis: AdmissibleBasis, gens, lq: LiteralQuotient) -> int:
    """Count classes v with rho_j(v) = v for every generator, testing each of the 2^k vectors."""
    subs = [rho(j, basis.n) for j in gens]
    count = 0
    for bits in itertools.product((0, 1), repeat=len(basis)):
        f = basis.element(np.array(bits, dtype=np.uint8))
        if all(lq.is_zero(g(f) + f) for g in subs):
            count += 1
    return count


@pytest.mark.parametrize("n,d", [(2, 2), (2, 4), (3, 3), (3, 4), (3, 5), (3, 6), (3, 7)])
def test_fixed_space_matches_brute_force(n, d):
    basis = admissible_basis(n, d)
    assert len(basis) <= 14
    lq = literal_qp(n, d)
    for gens, fixed in [(range(1, n), sigma_fixed(basis)), (range(1, n + 1), gl_fixed(basis))]:
        assert 2 ** len(fixed) == brute_fixed_count(basis, list(gens), lq)


def test_fixed_classes_are_fixed_and_independent():
    basis = admissible_basis(4, 7)
    lq = literal_qp(4, 7)
    fixed = sigma_fixed(basis)
    for f in fixed:
        for j in range(1, 4):
            assert lq.is_zero(rho(j, 4)(f) + f)
    assert lq.rank_of(fixed) == len(fixed)


@pytest.mark.parametrize("n,d", [(3, 6), (4, 7), (5, 10)])
def test_generators_are_involutions(n, d):
    act = InducedAction(admissible_basis(n, d))
    eye = np.eye(len(act.basis), dtype=np.int64)
    for j in range(1, n + 1):
        m = act.matrix(j).astype(np.int64)
        assert ((m @ m) % 2 == eye).all()


def test_adjacent_transpositions_braid():
    act = InducedAction(admissible_basis(5, 10))
    for j in range(1, 4):
        a, b = act.matrix(j).astype(np.int64), act.matrix(j + 1).astype(np.int64)
        assert ((a @ b @ a) % 2 == (b @ a @ b) % 2).all()


def test_gl_invariants_inside_sigma_invariants():
    basis = admissible_basis(4, 7)
    act = InducedAction(basis)
    sig = np.array([basis.coordinates(f) for f in act.sigma_fixed()], dtype=np.uint8)
    for f in act.gl_fixed():
        v = basis.coordinates(f)
        stacked = np.vstack([sig, v])
        assert gf2.rank(gf2.BitMatrix.from_dense(stacked)) == len(sig)


@pytest.mark.parametrize("n,d", [(4, 7), (5, 10)])
def test_action_respects_weight_filtration(n, d):
    basis = admissible_basis(n, d)
    act = InducedAction(basis)
    ws = [weight_vector(m) for m in basis.monomials]
    for j in range(1, n + 1):
        m = act.matrix(j)
        for r, c in zip(*np.nonzero(m)):
            assert ws[r] <= ws[c]


def test_orbit_of_spikes():
    basis = admissible_basis(3, 3)
    act = InducedAction(basis)
    start = basis.index[(3, 0, 0)]
    orb = invariants.orbit(act, start, [1, 2])
    assert {basis.monomials[i] for i in orb} == {(3, 0, 0), (0, 3, 0), (0, 0, 3)}


def test_orbit_rejects_non_permutation():
    # rho_2 sends x_1^3 to x_1^3 + x_1^2x_2 + x_1x_2^2 + x_2^3, not a single class
    basis = admissible_basis(2, 3)
    act = InducedAction(basis)
    with pytest.raises(ValueError):
        invariants.orbit(act, basis.index[(3, 0)], [2])


def test_subbasis_parts():
    b = admissible_basis(5, 10)
    assert len(subbasis(b, "zero")) + len(subbasis(b, "plus")) == len(b)
    assert subbasis(b, "all") is b
    with pytest.raises(ValueError):
        subbasis(b, "neither")


def test_constraint_shape_checked():
    act = InducedAction(admissible_basis(3, 3))
    with pytest.raises(ValueError):
        act.sigma_fixed(np.zeros((1, len(act.basis) + 1), dtype=np.uint8))


@pytest.mark.parametrize(
    "omega,part,expected",
    [
        ("2,2,1", "zero", 4),
        ("2,2,1", "plus", 1),
        ("2,2,1", "all", 5),
        ("4,1,1", "all", 3),
        ("4,3", "all", 1),
        ("2,4", "all", 1),
    ],
)
def test_sigma_dimensions_degree_10(omega, part, expected):
    b = subbasis(weight_quotient_basis(5, omega), part)
    assert len(sigma_fixed(b)) == expected


@pytest.mark.parametrize("omega,expected", [("4,1,1", 1), ("4,3", 0)])
def test_gl_dimensions_degree_10(omega, expected):
    assert len(gl_fixed(weight_quotient_basis(5, omega))) == expected


def test_gl_invariants_vanish_in_target_degrees():
    assert gl_fixed(admissible_basis(5, 10)) == []
    assert gl_fixed(admissible_basis(5, 25)) == []


def test_kameko_kernel_invariants():
    sig = kameko_kernel_fixed(5, 25, "sigma")
    assert len(sig) == 12
    zero = [f for f in sig if all(not all(m) for m in f)]
    assert len(zero) == 6
    assert kameko_kernel_fixed(5, 25, "gl") == []
    with pytest.raises(ValueError):
        kameko_kernel_fixed(5, 24)
    with pytest.raises(ValueError):
        kameko_kernel_fixed(5, 25, "affine")


def test_plus_invariants_degree_25_against_literal_quotient():
    # the quotient of (P_5^+)_25 by every Sq^j image and by all lower-weight monomials
    w = WeightVector((3, 3, 2, 1))
    fx = load_fixture("b5_d25_plus_3321")
    basis = AdmissibleBasis.build(5, 25, w, fx.monomials)
    inv = sigma_fixed(basis)
    assert len(inv) == 6
    cols = [m for m in plus_monomials(5, 25) if weight_vector(m) >= w]
    srcs = [(j, y) for j in range(1, 25) for y in plus_monomials(5, 25 - j)]
    lq = LiteralQuotient(cols, srcs)
    # weight (3,3,2,1) contributes 440 classes, the higher weights the 280 section classes
    assert len(cols) - len(lq.piv) == 720
    for g in inv:
        assert not lq.is_zero(g)
        for j in range(1, 5):
            assert lq.is_zero(rho(j, 5)(g) + g)
    assert lq.rank_of(inv) == 6


def test_sigma_fixed_on_empty_basis():
    empty = AdmissibleBasis.build(5, 10, (3, 3, 4), [])
    assert sigma_fixed(empty) == []
