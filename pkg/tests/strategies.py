"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from mcgorbits.mcg import GenName, all_generators
from mcgorbits.words import Letter, Word

SURFACES = [(1, 0), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (3, 1)]


def letters(g: int, n: int):
    kinds = [("a", g), ("b", g)] + ([("g", n)] if n else [])
    return st.sampled_from(kinds).flatmap(
        lambda kc: st.builds(Letter, st.just(kc[0]), st.integers(1, kc[1]), st.sampled_from([1, -1]))
    )


def raw_words(g: int = 2, n: int = 3, max_size: int = 12):
    return st.lists(letters(g, n), max_size=max_size)


def words(g: int = 2, n: int = 3, max_size: int = 12):
    return raw_words(g, n, max_size).map(Word)


def mcg_gens(g: int, n: int):
    return st.sampled_from(list(all_generators(g, n))).flatmap(
        lambda x: st.sampled_from([x, x.inverse()])
    )


def mcg_words(g: int, n: int, max_size: int = 5):
    return st.lists(mcg_gens(g, n), max_size=max_size)


__all__ = ["GenName", "SURFACES", "letters", "mcg_gens", "mcg_words", "raw_words", "words"]
