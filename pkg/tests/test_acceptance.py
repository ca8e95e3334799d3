"""Acceptance criteria, one test per criterion, at the stated tolerances and time budgets."""

from __future__ import annotations

import random
import time

import pytest

from mcgorbits.classify import (
    HIGHER_GENUS,
    INFINITE,
    TRANSLATION,
    bounds_B1,
    bounds_B2,
    bounds_scalar,
    classify,
    count_scalar_orbit,
    expected_affine_count,
)
from mcgorbits.cyclo import field
from mcgorbits.mcg import (
    GenName,
    all_generators,
    apply_auto,
    auto_of,
    compose,
    inverse_auto,
    max_tau,
    relator_conjugator,
)
from mcgorbits.orbit import orbit, suborbit_probe
from mcgorbits.reps import AFFINE, GL2, SCALAR, AffElt, Rep, UpperElt, canon, conjugacy_equal, rho_mu_c, tensor
from mcgorbits.selftest import mcg_checks, random_affine_rep, reps_checks
from mcgorbits.surface import delta, theta, xi
from mcgorbits.templates import grid_cases
from mcgorbits.words import beta, commutator, concat, invert

F2, F3, F4 = field(2), field(3), field(4)


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def mu_c(N: int, c: list) -> Rep:
    F = field(N)
    return rho_mu_c(len(c), F.zeta_pow(1), [F(x) for x in c])


@pytest.mark.criterion(1, "genus-1 affine exact counts 3, 8, 6")
def test_criterion_1_exact_counts():
    for rep, want in ((mu_c(2, [1]), 3), (mu_c(3, [1]), 8), (mu_c(2, ["1/2", "1/2"]), 6)):
        res, dt = timed(orbit, rep, "pure")
        assert res.finite and res.size == want
        assert dt < 1.0
    assert bounds_B2(2, 1, 1) == (3, 3) and bounds_B2(3, 1, 1) == (8, 8)
    assert bounds_B2(2, 2, 1) == (6, 6)


@pytest.mark.criterion(2, "N=4 orbit within [12, 15] and equal to expected_affine_count(4, 1) = 12")
def test_criterion_2_bounded_count():
    res, dt = timed(orbit, mu_c(4, [1]), "pure")
    lo, hi = bounds_B2(4, 1, 1)
    assert (lo, hi) == (12, 15)
    assert res.finite and lo <= res.size <= hi
    assert res.size == expected_affine_count(4, 1) == 12
    assert dt < 5.0


@pytest.mark.criterion(3, "scalar orbits 3 and 15")
def test_criterion_3_scalar():
    t = time.perf_counter()
    lam = Rep(SCALAR, 1, 0, F2, [F2(-1), F2(1)])
    res = orbit(lam, "pure")
    assert res.finite and res.size == 3 == count_scalar_orbit(lam)
    lam2 = Rep(SCALAR, 2, 0, F2, [F2(-1), F2(1), F2(1), F2(1)])
    res2 = orbit(lam2, "pure")
    lo, hi = bounds_scalar(2, 2)
    assert (lo, hi) == (8, 16)
    assert res2.finite and res2.size == 15 and lo <= res2.size <= hi
    assert time.perf_counter() - t < 5.0


@pytest.mark.criterion(4, "B1 inequality for a split sum with image orders 2 and 1")
def test_criterion_4_B1():
    t = time.perf_counter()
    # lambda_1 = (-1, 1), lambda_2 trivial, as a diagonal matrix representation
    rep = Rep(GL2, 1, 0, F2, [UpperElt(F2(-1), F2.zero, F2.one), UpperElt(F2.one, F2.zero, F2.one)])
    c = classify(rep)
    assert c.finite and c.details["image_orders"] == [2, 1]
    res = orbit(rep, "full")
    lo, hi = bounds_B1(2, 1, 2, 1)
    assert c.bounds == (lo, hi)
    assert res.finite and lo <= res.size <= hi
    assert time.perf_counter() - t < 5.0


@pytest.mark.criterion(5, "B2 composite lambda (x) rho_mu_c within [3, 12]")
def test_criterion_5_B2():
    t = time.perf_counter()
    lam = Rep(SCALAR, 1, 1, F2, [F2(-1), F2(1), F2(1)])
    rep = tensor(lam, mu_c(2, [1]))
    lo, hi = bounds_B2(2, 1, 2)
    assert (lo, hi) == (3, 12)
    res = orbit(rep, "pure")
    assert res.finite and lo <= res.size <= hi
    assert classify(rep).bounds == (lo, hi)
    assert time.perf_counter() - t < 10.0


@pytest.mark.criterion(6, "translation group: probe grows, classify infinite")
def test_criterion_6_translation():
    t = time.perf_counter()
    rep = Rep(AFFINE, 1, 0, F2, [AffElt(F2.one, F2.one), AffElt(F2.one, F2.zero)])
    assert suborbit_probe(rep, GenName("t", 1), 100)
    c = classify(rep)
    assert (c.verdict, c.reason) == (INFINITE, TRANSLATION)
    assert time.perf_counter() - t < 1.0


@pytest.mark.criterion(7, "genus-2 non-abelian: infinite, elimination fails, BFS exceeds 5000")
def test_criterion_7_higher_genus():
    t = time.perf_counter()
    rep = Rep(AFFINE, 2, 0, F2, [AffElt(F2(-1), F2.zero), AffElt(F2.one, F2(-1)),
                                 AffElt(F2(-1), F2.zero), AffElt(F2.one, F2.one)])
    c = classify(rep)
    assert (c.verdict, c.reason) == (INFINITE, HIGHER_GENUS)
    assert c.details["elimination_check"] is False
    res = orbit(rep, "full", cap=5000)
    assert res.status == "cap_exceeded" and res.states == 5000
    assert time.perf_counter() - t < 30.0


# -- criterion 8: randomized structural invariants --------------------------------------

SURFACES = ((1, 0), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (3, 1), (3, 2))


def _automorphism_case(rng: random.Random) -> None:
    g, n = rng.choice(SURFACES)
    gens = list(all_generators(g, n))
    h = rng.choice(gens)
    a, b = auto_of(h, g, n), inverse_auto(h, g, n)
    assert compose(a, b).is_identity() and compose(b, a).is_identity()
    for x in (h, h.inverse()):
        assert relator_conjugator(auto_of(x, g, n), g, n) is not None
    if n >= 3:
        j = rng.randrange(1, n - 1)
        s1, s2 = auto_of(GenName("s", j), g, n), auto_of(GenName("s", j + 1), g, n)
        assert compose(compose(s1, s2), s1) == compose(compose(s2, s1), s2)
    if n >= 2:
        s = auto_of(GenName("s", rng.randrange(1, n)), g, n)
        t = auto_of(GenName("t", rng.randrange(1, 3 * g)), g, n)
        assert compose(s, t) == compose(t, s)
        k = rng.randrange(1, n)
        x = xi(g, n, k)
        mix = auto_of(GenName("t", 3 * g - 1 + k), g, n)
        assert apply_auto(mix, x) == x
        assert apply_auto(mix, delta(g, n)) == concat(commutator(invert(x), beta(g)), delta(g, n))
    if g >= 2:
        k = rng.randrange(1, g)
        th = theta(g, k)
        assert apply_auto(auto_of(GenName("t", 2 * g + k), g, n), th) == th
    assert max_tau(g, n) == 3 * g - 1 + max(0, n - 1)


def _oracle_case(rng: random.Random) -> None:
    g, n = rng.choice(SURFACES[:7])
    N = rng.choice((2, 3, 4, 5, 6))
    r1 = random_affine_rep(rng, g, n, N)
    F = r1.field
    if rng.random() < 0.5:
        h = AffElt(F.zeta_pow(rng.randrange(N)) * F(rng.randint(1, 3)), F([rng.randint(-2, 2) for _ in range(F.degree)]))
        hi = h.inverse()
        r2 = r1.replace([h * v * hi for v in r1.values])
    else:
        r2 = random_affine_rep(rng, g, n, N)
    same = canon(r1) == canon(r2)
    assert same == (conjugacy_equal(r1, r2) is not None)


@pytest.mark.criterion(8, "structural invariant suite, at least 1000 randomized cases")
def test_criterion_8_invariants():
    t = time.perf_counter()
    rng = random.Random(20240601)
    cases = 0
    checks = mcg_checks() + reps_checks(seed=7, cases=120)
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]
    cases += len(checks)
    for _ in range(400):
        _automorphism_case(rng)
        cases += 1
    for _ in range(300):
        _oracle_case(rng)
        cases += 1
    assert cases >= 1000
    assert time.perf_counter() - t < 60.0


@pytest.mark.slow
@pytest.mark.criterion(9, "classifier and BFS agree on the full template grid at cap 50000")
def test_criterion_9_grid_concordance():
    t = time.perf_counter()
    mismatches = []
    count = 0
    for case in grid_cases():
        count += 1
        verdict = classify(case.rep)
        res = orbit(case.rep, "full", cap=50_000)
        if verdict.finite != res.finite:
            mismatches.append((case.label, verdict.verdict, res.status))
    elapsed = time.perf_counter() - t
    assert count == 69
    assert not mismatches, mismatches
    assert elapsed < 300.0
