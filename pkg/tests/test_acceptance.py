"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every test starts from cold in-process caches (the on-disk cache is a fresh
temporary directory, see conftest), so the timings cover the full computation.
"""

from __future__ import annotations

import random
import time

import numpy as np
import pytest

from hitprob import fixtures, gf2, hitsolver, identities, invariants, weights
from hitprob.hitsolver import (
    AdmissibleBasis,
    admissible_basis,
    kameko_matrix,
    monomials_of_degree,
    qp_dimension,
    weight_quotient_basis,
)
from hitprob.invariants import gl_fixed, kameko_kernel_fixed, sigma_fixed, subbasis
from hitprob.phi import phi_set
from hitprob.polyalg import parse_monomial, sq
from hitprob.weights import is_spike

from test_hitsolver import _singer_wood, oracle_admissible
from test_polyalg import sq_oracle


def _clear_caches():
    for mod in (hitsolver, weights):
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


@pytest.fixture
def verdict(capsys):
    """Evaluate every named check, print one summary line, then assert."""
    _clear_caches()
    start = time.perf_counter()

    def finish(criterion: int, checks: dict[str, bool], budget: float | None = None) -> None:
        elapsed = time.perf_counter() - start
        if budget is not None:
            checks[f"time {elapsed:.1f}s < {budget:.0f}s"] = elapsed < budget
        failed = [k for k, ok in checks.items() if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = "all checks hold" if not failed else "failed: " + "; ".join(failed)
        with capsys.disabled():
            print(f"\n[criterion {criterion}] {status} ({elapsed:.1f}s) {detail}")
        assert not failed, failed

    return finish


def _fixture_set(name: str, strict: bool = True) -> set[tuple[int, ...]]:
    return fixtures.load_fixture(name, strict=strict).as_set()


def test_criterion_1_degree_10_basis(verdict):
    basis = admissible_basis(5, 10)
    listed: set[tuple[int, ...]] = set()
    for name in ("b5_d10_zero", "b5_d10_plus_221", "b5_d10_plus_411", "b5_d10_plus_43", "b5_d10_24"):
        listed |= _fixture_set(name)
    verdict(
        1,
        {
            "dim (QP_5)_10 = 280": len(basis) == 280,
            "B_5(10) equals the listed set": set(map(tuple, basis.monomials)) == listed,
        },
        budget=30,
    )


def test_criterion_2_degree_25_dimension(verdict):
    verdict(2, {"dim (QP_5)_25 = 1240": qp_dimension(5, 25) == 1240}, budget=600)


def test_criterion_3_degree_25_weight_pieces(verdict):
    b = weight_quotient_basis(5, "3,3,2,1")
    zero = {tuple(m) for m in b.zero_part}
    plus = {tuple(m) for m in b.plus_part}
    verdict(
        3,
        {
            "QP_5(3,3,4) = 0": len(weight_quotient_basis(5, "3,3,4")) == 0,
            "|B_5^0(3,3,2,1)| = 520": len(zero) == 520,
            "|B_5^+(3,3,2,1)| = 440": len(plus) == 440,
            "zero part equals the listing": zero == _fixture_set("b5_d25_zero"),
            "plus part equals the listing": plus == _fixture_set("b5_d25_plus_3321"),
        },
        budget=600,
    )


def test_criterion_4_kameko_decomposition(verdict):
    km = kameko_matrix(5, 10)
    verdict(
        4,
        {
            "source dim 1240": len(km.source) == 1240,
            "target dim 280": len(km.target) == 280,
            "kernel dim 960": len(km.kernel) == 960,
            "surjective": km.is_surjective,
        },
    )


def test_criterion_5_degree_11(verdict):
    basis = admissible_basis(5, 11)
    members = set(map(tuple, basis.monomials))
    zero_listing = fixtures.load_fixture("b5_d11_zero", strict=False)
    bad = [m for m in zero_listing.monomials if tuple(m) not in members]
    plus321 = _fixture_set("b5_d11_plus_321")
    w34 = _fixture_set("b5_d11_34")
    b3 = admissible_basis(5, 3)
    verdict(
        5,
        {
            f"the 240 listed B_5^0(11) monomials are admissible ({len(bad)} are not in B_5(11))": len(zero_listing) == 240
            and not bad,
            "the 40 + 10 listed monomials are admissible": (plus321 | w34) <= members,
            "weight (3,2,1) plus part matches": set(map(tuple, basis.restrict((3, 2, 1)).plus_part)) == plus321,
            "weight (3,4) matches": set(map(tuple, basis.restrict((3, 4)).monomials)) == w34,
            f"|B_5(11)| = {len(basis)} = 290 + |B_5(3)| = {290 + len(b3)}": len(basis) == 290 + len(b3) == 315,
        },
        budget=60,
    )


def test_criterion_6_invariants(verdict):
    zero221 = subbasis(weight_quotient_basis(5, "2,2,1"), "zero")
    ker_sigma = kameko_kernel_fixed(5, 25, "sigma")
    verdict(
        6,
        {
            "dim QP_5^0(2,2,1)^Sigma_5 = 4": len(sigma_fixed(zero221)) == 4,
            f"dim Ker^Sigma_5 = 10 (computed {len(ker_sigma)})": len(ker_sigma) == 10,
            "QP_5(4,3)^GL_5 = 0": len(gl_fixed(weight_quotient_basis(5, "4,3"))) == 0,
            "dim QP_5(4,1,1)^GL_5 = 1": len(gl_fixed(weight_quotient_basis(5, "4,1,1"))) == 1,
            "(QP_5)_10^GL_5 = 0": len(gl_fixed(admissible_basis(5, 10))) == 0,
            "(QP_5)_25^GL_5 = 0": len(gl_fixed(admissible_basis(5, 25))) == 0,
        },
        budget=900,
    )


def test_criterion_7_phi(verdict):
    def lift(omega):
        return phi_set(weight_quotient_basis(4, omega).monomials)

    def target(omega):
        return set(weight_quotient_basis(5, omega).monomials)

    img = lift("3,3,2,1")
    spare = parse_monomial("x_1^{3}x_2^{4}x_3x_4x_5")
    verdict(
        7,
        {
            # the count refers to the plus part of the lift; all of it has 520 + 361 elements
            "|Phi^+(B_4(3,3,2,1))| = 361": len(img.plus) == 361,
            "Phi(B_4(3,3,2,1)) inside B_5(3,3,2,1)": img.all <= target("3,3,2,1"),
            "Phi(B_4(2,2,1)) = B_5(2,2,1)": lift("2,2,1").all == target("2,2,1"),
            "Phi(B_4(4,1,1)) = B_5(4,1,1) minus x_1^3x_2^4x_3x_4x_5": lift("4,1,1").all
            == target("4,1,1") - {spare}
            and spare in target("4,1,1"),
            "Phi(B_4(4,3)) = B_5(4,3)": lift("4,3").all == target("4,3"),
        },
    )


def _cartan_failures(cases: int, seed: int) -> int:
    rng = random.Random(seed)
    failures = 0
    for _ in range(cases):
        n = rng.randint(1, 5)
        m = tuple(rng.randint(0, 20) for _ in range(n))
        k = rng.randint(0, sum(m) + 2)
        if sq(k, m) != sq_oracle(k, m):
            failures += 1
    return failures


def _thread_results() -> list:
    out = []
    for threads in (1, 2, gf2.max_threads()):
        res = []
        for k, d in [(5, 25), (5, 11), (4, 25)]:
            blk = hitsolver.PlusBlock(k, d, threads=threads)
            res.append((blk.admissible(), blk.echelon.rows.tobytes()))
        out.append(res)
    return out


def test_criterion_8_property_suites(verdict):
    cartan = _cartan_failures(1500, seed=2024)

    singer_ok = True
    try:
        for n in range(1, 6):
            for d in (10, 11, 25):
                _singer_wood(n, d)
        for n in range(1, 4):
            for d in range(1, 21):
                _singer_wood(n, d)
    except AssertionError:
        singer_ok = False

    spikes_ok = all(
        set(m for m in monomials_of_degree(n, d) if is_spike(m)) <= set(admissible_basis(n, d).monomials)
        for n in range(1, 6)
        for d in (10, 11, 25)
    )

    oracle_ok = all(
        list(map(tuple, admissible_basis(n, d).monomials)) == sorted(oracle_admissible(n, d), key=weights.order_key)
        for n in range(1, 4)
        for d in range(0, 13)
    )

    runs = _thread_results()
    det_ok = all(r == runs[0] for r in runs)
    verdict(
        8,
        {
            f"Cartan fuzz, 1500 cases ({cartan} failures)": cartan == 0,
            "Singer filter and Wood vanishing": singer_ok,
            "spikes admissible": spikes_ok,
            "leading-term method equals definitional oracle, n <= 3, d <= 12": oracle_ok,
            "identical echelons with 1, 2 and max threads": det_ok,
        },
    )


def test_criterion_9_identity_grid(verdict):
    checks = {}
    for name in sorted(identities.IDENTITIES):
        res = identities.verify_grid(name, max_n=4, max_degree=40)
        checks[f"{name}: {len(res.failures)} of {res.checked} instances fail"] = res.ok and res.checked > 0
    verdict(9, checks, budget=300)
