from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from mcgorbits.mcg import (
    GenName,
    all_generators,
    apply_auto,
    auto_of,
    compose,
    format_mcg_word,
    identity_auto,
    inverse_auto,
    invert_mcg_word,
    max_tau,
    parse_mcg_word,
    relator_conjugator,
    sigma_cycl,
    sigma_cycl_power,
    word_auto,
)
from mcgorbits.surface import delta, theta, xi
from mcgorbits.words import Letter, Word, beta, commutator, concat, invert, parse_word
from strategies import SURFACES, mcg_words, words

W = parse_word


def img(a, letter: str) -> Word:
    return a.image(W(letter)[0])


def test_tau2_images():
    a = auto_of(GenName("t", 2), 1, 2)
    assert img(a, "a1") == W("a1 b1")
    for x in ("b1", "g1", "g2"):
        assert img(a, x) == W(x)


def test_sigma1_images():
    a = auto_of(GenName("s", 1), 1, 2)
    assert img(a, "g1") == W("g1 g2 g1^-1")
    assert img(a, "g2") == W("g1")


def test_handle_mixing_twist_images():
    g = 2
    a = auto_of(GenName("t", 2 * g + 1), g, 0)
    th = theta(g, 1)
    assert img(a, "a2") == concat(invert(th), W("a2"))
    assert img(a, "a1") == concat(W("a1"), th)
    assert img(a, "b1") == concat(concat(invert(th), W("b1")), th)


def test_puncture_mixing_twist_images():
    g, n = 1, 2
    a = auto_of(GenName("t", 3 * g), g, n)
    x = xi(g, n, 1)
    assert img(a, "a1") == concat(W("a1"), x)
    assert img(a, "b1") == concat(concat(invert(x), W("b1")), x)
    assert img(a, "g1") == concat(concat(invert(x), W("g1")), x)
    assert img(a, "g2") == W("g2")


def test_inverse_examples():
    assert img(inverse_auto(GenName("t", 2), 1, 1), "a1") == W("a1 b1^-1")
    s = inverse_auto(GenName("s", 1), 1, 2)
    assert img(s, "g1") == W("g2")
    assert img(s, "g2") == W("g2^-1 g1 g2")
    g, n, k = 2, 3, 2
    t = inverse_auto(GenName("t", 3 * g - 1 + k), g, n)
    x = xi(g, n, k)
    assert img(t, "a2") == concat(W("a2"), invert(x))
    assert img(t, "b2") == concat(concat(x, W("b2")), invert(x))
    for i in (1, 2):
        assert img(t, f"g{i}") == concat(concat(x, W(f"g{i}")), invert(x))


def test_apply_auto_examples():
    assert apply_auto(auto_of(GenName("t", 2), 1, 0), W("a1 b1")) == W("a1 b1 b1")
    w = W("a1 g2 b1^-1")
    assert apply_auto(identity_auto(1, 2), w) == w
    assert apply_auto(auto_of(GenName("s", 1), 1, 2), W("g1 g2")) == W("g1 g2")


def test_sigma_cycl_n2():
    a = sigma_cycl(2)
    d = delta(1, 2)
    assert img(a, "g1") == concat(concat(d, W("g2")), invert(d))
    assert img(a, "g2") == W("g1")


def test_sigma_cycl_power_examples():
    d = delta(1, 3)
    a = sigma_cycl_power(3, 1)
    assert img(a, "g1") == concat(concat(d, W("g3")), invert(d))
    assert img(a, "g2") == W("g1") and img(a, "g3") == W("g2")
    a = sigma_cycl_power(3, 3)
    for i in (1, 2, 3):
        assert img(a, f"g{i}") == concat(concat(d, W(f"g{i}")), invert(d))
    d2 = delta(1, 2)
    a = sigma_cycl_power(2, 2)
    for i in (1, 2):
        assert img(a, f"g{i}") == concat(concat(d2, W(f"g{i}")), invert(d2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sigma_cycl_power_matches_iterated_composition(n):
    base = sigma_cycl(n)
    acc = identity_auto(1, n)
    for k in range(1, n + 1):
        acc = compose(base, acc)
        assert sigma_cycl_power(n, k).images == acc.images
        assert sigma_cycl_power(n, k).perm == acc.perm


def test_relator_conjugator_identity():
    assert relator_conjugator(identity_auto(2, 2), 2, 2) == Word()


@pytest.mark.parametrize("g, n", SURFACES)
def test_generator_relations(g, n):
    for gen in all_generators(g, n):
        a, b = auto_of(gen, g, n), inverse_auto(gen, g, n)
        assert compose(a, b).is_identity() and compose(b, a).is_identity()
        assert relator_conjugator(a, g, n) is not None
        assert relator_conjugator(b, g, n) is not None
    for i in range(1, 3 * g):
        for j in range(1, n):
            t, s = auto_of(GenName("t", i), g, n), auto_of(GenName("s", j), g, n)
            assert compose(t, s) == compose(s, t)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_braid_relations(n):
    s = {j: auto_of(GenName("s", j), 1, n) for j in range(1, n)}
    for i in range(1, n - 1):
        assert compose(compose(s[i], s[i + 1]), s[i]) == compose(compose(s[i + 1], s[i]), s[i + 1])
    for i in range(1, n):
        for j in range(i + 2, n):
            assert compose(s[i], s[j]) == compose(s[j], s[i])


@pytest.mark.parametrize("g, n", [(2, 0), (3, 2), (2, 3), (1, 4)])
def test_fixed_elements(g, n):
    for k in range(1, g):
        th = theta(g, k)
        assert apply_auto(auto_of(GenName("t", 2 * g + k), g, n), th) == th
    for k in range(1, n):
        x = xi(g, n, k)
        assert apply_auto(auto_of(GenName("t", 3 * g - 1 + k), g, n), x) == x


@pytest.mark.parametrize("g, n", [(1, 2), (1, 4), (2, 3)])
def test_mixing_twist_moves_delta(g, n):
    d = delta(g, n)
    for k in range(1, n):
        image = apply_auto(auto_of(GenName("t", 3 * g - 1 + k), g, n), d)
        assert image == concat(commutator(invert(xi(g, n, k)), beta(g)), d)
    for i in range(1, 3 * g):
        assert apply_auto(auto_of(GenName("t", i), g, n), d) == d


@pytest.mark.parametrize("g, n", SURFACES)
def test_permutations(g, n):
    ident = tuple(range(1, n + 1))
    for i in range(1, max_tau(g, n) + 1):
        assert auto_of(GenName("t", i), g, n).perm == ident
    for j in range(1, n):
        p = list(ident)
        p[j - 1], p[j] = p[j], p[j - 1]
        assert auto_of(GenName("s", j), g, n).perm == tuple(p)


def test_generator_ranges():
    assert max_tau(1, 0) == 2 and max_tau(2, 3) == 7 and max_tau(3, 1) == 8
    with pytest.raises(ValueError):
        auto_of(GenName("t", 3), 1, 1)
    with pytest.raises(ValueError):
        auto_of(GenName("s", 1), 1, 1)
    with pytest.raises(ValueError):
        parse_mcg_word("t9", 1, 2)
    with pytest.raises(ValueError):
        parse_mcg_word("q1")


def test_mcg_word_text_round_trip():
    text = "t1 t5^-1 s2"
    word = parse_mcg_word(text, 2, 3)
    assert format_mcg_word(word) == text
    assert format_mcg_word(invert_mcg_word(word)) == "s2^-1 t5 t1^-1"


@pytest.mark.parametrize("g, n", [(1, 2), (2, 2)])
def test_word_auto_inverse_word(g, n):
    @given(mcg_words(g, n, 6), words(g, n, 8))
    def check(word, w):
        a = word_auto(word, g, n)
        b = word_auto(invert_mcg_word(word), g, n)
        assert compose(a, b).is_identity()
        assert apply_auto(b, apply_auto(a, w)) == w

    check()


@pytest.mark.parametrize("g, n", [(1, 3), (2, 2)])
def test_automorphisms_are_multiplicative(g, n):
    @given(st.sampled_from(list(all_generators(g, n))), words(g, n, 6), words(g, n, 6))
    def check(gen, u, v):
        a = auto_of(gen, g, n)
        assert apply_auto(a, concat(u, v)) == concat(apply_auto(a, u), apply_auto(a, v))

    check()


def test_letter_image_inverse():
    a = auto_of(GenName("t", 2), 1, 0)
    assert a.image(Letter("a", 1, -1)) == W("b1^-1 a1^-1")
