from __future__ import annotations

import dataclasses
import math

import pytest
from hypothesis import given, strategies as st

from mcgorbits.classify import (
    FINITE,
    GENUS1_MU_C,
    HIGHER_GENUS,
    INFINITE,
    NON_TORSION,
    NON_TRANSLATION_PUNCTURE,
    TRANSLATION,
    ABELIAN_FINITE,
    ABELIAN_INFINITE,
    PrepareError,
    bounds_B1,
    bounds_B2,
    bounds_scalar,
    classify,
    count_scalar_orbit,
    elimination_check,
    expected_affine_count,
    k_set_size,
    prepare,
)
from mcgorbits.cyclo import euler_phi, field
from mcgorbits.orbit import orbit
from mcgorbits.reps import AFFINE, GL2, SCALAR, AffElt, Rep, UpperElt, act_word, relator_value, rho_mu_c, tensor, validate
from mcgorbits.templates import template

F2, F3, F4, F5 = field(2), field(3), field(4), field(5)


def aff(F, a, b) -> AffElt:
    return AffElt(F(a), F(b))


def g2_rep(b1=-1) -> Rep:
    return Rep(AFFINE, 2, 0, F2, [aff(F2, -1, 0), aff(F2, 1, b1), aff(F2, -1, 0), aff(F2, 1, 1)])


def scalar(F, g, n, vals) -> Rep:
    return Rep(SCALAR, g, n, F, [F(v) for v in vals])


# -- counting formulas -----------------------------------------------------------------


@pytest.mark.parametrize("args,want", [((2, 1, 1), (3, 3)), ((3, 1, 1), (8, 8)), ((4, 1, 1), (12, 15))])
def test_bounds_B2_examples(args, want):
    assert bounds_B2(*args) == want


@pytest.mark.parametrize("args,want", [((2, 1), 3), ((4, 1), 12), ((3, 2), 24)])
def test_expected_affine_count_examples(args, want):
    assert expected_affine_count(*args) == want


def test_bounds_scalar_and_B1():
    assert bounds_scalar(2, 2) == (8, 16)
    assert bounds_B1(2, 1, 2, 1) == (1, 4)
    assert bounds_B1(3, 2, 6, 2) == (14, 1296)


def test_bounds_domain_errors():
    for fn, args in ((bounds_scalar, (0, 1)), (bounds_B1, (1, 1, 0, 1)), (bounds_B2, (1, 1, 1)),
                     (bounds_B2, (2, 0, 1)), (expected_affine_count, (1, 1))):
        with pytest.raises(ValueError):
            fn(*args)


@given(st.integers(2, 40))
def test_k_set_size_matches_jordan_totient(N):
    # |K_N| is Jordan's J_2(N) = N^2 prod(1 - 1/p^2)
    j2 = N * N
    for p in range(2, N + 1):
        if N % p == 0 and all(p % q for q in range(2, p)):
            j2 = j2 // (p * p) * (p * p - 1)
    assert k_set_size(N) == j2


@given(st.integers(2, 30), st.integers(1, 3), st.integers(1, 4))
def test_B2_bounds_ordered(N, n_prime, N2):
    lo, hi = bounds_B2(N, n_prime, N2)
    assert lo <= hi
    assert expected_affine_count(N, n_prime) <= (N * N - 1) * N ** (n_prime - 1)
    if all(N % p for p in range(2, N)):
        # prime N: the lower and upper bounds coincide for N2 = 1
        assert bounds_B2(N, n_prime, 1) == (expected_affine_count(N, n_prime),) * 2
    phi = euler_phi(N)
    assert phi * (2 * N - phi) <= N * N - 1


@pytest.mark.parametrize("rep,want", [
    (scalar(F2, 1, 0, [-1, 1]), 3),
    (scalar(F2, 2, 0, [-1, 1, 1, 1]), 15),
    (scalar(F2, 1, 1, [1, 1, -1]), 4),
])
def test_count_scalar_orbit_examples(rep, want):
    assert count_scalar_orbit(rep) == want


def test_count_scalar_orbit_rejects_infinite_image():
    with pytest.raises(ValueError):
        count_scalar_orbit(scalar(F2, 1, 0, [2, 1]))


# -- prepared form -------------------------------------------------------------------


def test_prepare_bezout_reduction():
    z = F5.zeta_pow(1)
    r = Rep(AFFINE, 1, 1, F5, [AffElt(z**2, F5.zero), AffElt(z**3, F5.one), AffElt.identity(F5)])
    r = r.replace(list(r.values[:2]) + [AffElt(F5.one, -relator_value(r).trans)])
    assert validate(r)
    p = prepare(r)
    assert p.rep.alpha(1).lin == z  # (2, 3) -> (1, 0)
    assert p.rep.beta(1) == AffElt(F5.one, F5.one)
    assert p.N == 5 and p.failure is None
    assert [x.kind for x in p.word] == ["t"] * len(p.word) and p.word
    assert act_word(p.word, r).alpha(1).lin == z


def test_prepare_mu_c_is_already_prepared():
    mu = F3.zeta_pow(1)
    r = rho_mu_c(2, mu, [F3("1/3"), F3("2/3")])
    p = prepare(r)
    assert p.word == []
    assert p.conjugator == AffElt(-(mu - F3.one), F3.zero)
    assert p.rep.beta(1) == AffElt(F3.one, F3.one)
    assert p.c == [x * -(mu - F3.one) for x in (F3("1/3"), F3("2/3"))]


def test_prepare_errors():
    with pytest.raises(PrepareError):
        prepare(Rep(AFFINE, 1, 0, F2, [aff(F2, 1, 1), aff(F2, 1, 0)]))
    with pytest.raises(PrepareError):
        prepare(scalar(F2, 1, 0, [-1, 1]))


def test_prepare_flags_rotating_puncture():
    # gamma_1 rotates about 0; gamma_2 is solved from the relator
    z = F3.zeta_pow(1)
    ident = AffElt.identity(F3)
    r = Rep(AFFINE, 1, 2, F3, [AffElt(z, F3.zero), AffElt(F3.one, F3.one), AffElt(z, F3.zero), ident])
    r = r.replace(list(r.values[:3]) + [relator_value(r).inverse()])
    assert validate(r)
    p = prepare(r)
    assert p.failure == NON_TRANSLATION_PUNCTURE
    c = classify(r)
    assert (c.verdict, c.reason) == (INFINITE, NON_TRANSLATION_PUNCTURE)


def test_elimination_examples():
    p = prepare(g2_rep(-1))
    assert p.exponents == [1, 1]
    assert not elimination_check(p)
    good = dataclasses.replace(p, rep=p.rep.replace([aff(F2, -1, 0), aff(F2, 1, 0), aff(F2, -1, 0), aff(F2, 1, 1)]))
    assert elimination_check(good)
    a_one = dataclasses.replace(p, rep=good.rep.replace([aff(F2, -1, 1)] + list(good.rep.values[1:])))
    assert not elimination_check(a_one)
    with pytest.raises(ValueError):
        elimination_check(prepare(rho_mu_c(1, F2(-1), [F2.one])))


# -- verdicts ------------------------------------------------------------------------


def test_classify_scalar():
    c = classify(scalar(F2, 2, 0, [-1, 1, -1, -1]))
    assert (c.verdict, c.reason, c.bounds) == (FINITE, ABELIAN_FINITE, (8, 16))
    assert classify(scalar(F2, 1, 0, [2, 1])).reason == ABELIAN_INFINITE


def test_classify_higher_genus():
    c = classify(g2_rep())
    assert (c.verdict, c.reason) == (INFINITE, HIGHER_GENUS)
    assert c.details["elimination_check"] is False
    assert "not algebraic" in c.algebraizability_note


def test_classify_tensor_genus_one():
    lam = scalar(F2, 1, 1, [-1, 1, 1])
    rep = tensor(lam, rho_mu_c(1, F2(-1), [F2.one]))
    c = classify(rep)
    assert (c.verdict, c.reason) == (FINITE, GENUS1_MU_C)
    assert c.bounds == (3, 12)
    assert "algebraic" in c.algebraizability_note


def test_classify_translation_and_non_torsion():
    tr = Rep(AFFINE, 1, 0, F2, [aff(F2, 1, 1), aff(F2, 1, 0)])
    assert classify(tr).reason == TRANSLATION
    nt = Rep(AFFINE, 1, 1, F3, [aff(F3, 2, 0), aff(F3, 1, 1), AffElt.identity(F3)])
    nt = nt.replace(list(nt.values[:2]) + [relator_value(nt).inverse()])
    assert validate(nt)
    assert classify(nt).reason == NON_TORSION


def test_classify_rejects_invalid():
    with pytest.raises(ValueError):
        classify(g2_rep(0))


def test_classify_json_shape():
    js = classify(rho_mu_c(1, F2(-1), [F2.one])).to_json()
    assert js["verdict"] == "finite" and js["reason"] == "genus1_mu_c" and js["bounds"] == [3, 3]
    assert js["details"]["mu_order"] == 2 and js["details"]["n_prime"] == 1


# -- bounds against BFS ------------------------------------------------------------------


@pytest.mark.parametrize("rep", [
    scalar(F2, 1, 0, [-1, 1]),
    scalar(F3, 1, 1, [1, 1, 1]).replace([F3.zeta_pow(1), F3.one, F3.one]),
    rho_mu_c(1, F2(-1), [F2.one]),
    rho_mu_c(1, F3.zeta_pow(1), [F3.one]),
    rho_mu_c(2, F3.zeta_pow(1), [F3("1/3"), F3("2/3")]),
    rho_mu_c(1, F4.zeta_pow(1), [F4.one]),
    template("tensor_rho_mu_c", 1, 1, 3),
    Rep(GL2, 1, 0, F2, [UpperElt(F2(-1), F2.zero, F2.one), UpperElt(F2.one, F2.zero, F2.one)]),
], ids=["scalar", "scalar N3", "mu_c N2", "mu_c N3", "mu_c N3 n2", "mu_c N4", "tensor N3", "split"])
def test_bounds_contain_bfs_size(rep):
    c = classify(rep)
    assert c.finite
    res = orbit(rep, "pure")
    assert res.finite
    lo, hi = c.bounds
    assert lo <= res.size <= hi
    if c.expected_size is not None and c.reason == ABELIAN_FINITE:
        assert res.size == c.expected_size


def test_mu_c_expected_count_prime():
    for N in (2, 3, 5):
        F = field(N)
        rep = rho_mu_c(1, F.zeta_pow(1), [F.one])
        assert orbit(rep, "pure").size == expected_affine_count(N, 1)


def test_prepared_shape_generator_images():
    # every class in the orbit of rho_{mu,c} prepares to mu^k z, z + 1 with translation punctures
    rep = rho_mu_c(2, F3.zeta_pow(1), [F3("1/3"), F3("2/3")])
    for c in orbit(rep, "pure", keep_classes=True).classes[:20]:
        p = prepare(Rep(AFFINE, 1, 2, F3, c.values))
        assert p.failure is None
        assert p.rep.beta(1) == AffElt(F3.one, F3.one)
        assert all(v.lin.is_one() for v in p.rep.gammas)
        assert math.gcd(p.exponents[0], F3.torsion_order()) != F3.torsion_order()
