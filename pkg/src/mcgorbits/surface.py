"""The standard presentation of the fundamental group of a punctured surface.

Generators a_1, b_1, ..., a_g, b_g, g_1, ..., g_n with the single relation
[a_1, b_1] ... [a_g, b_g] g_1 ... g_n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .words import Letter, Word, alpha, beta, commutator, concat, invert

__all__ = [
    "Presentation",
    "check_gn",
    "commutator_product",
    "delta",
    "generator_index",
    "generators",
    "presentation",
    "theta",
    "xi",
]


def check_gn(g: int, n: int) -> None:
    if g < 1:
        raise ValueError(f"genus must be at least 1, got g={g}")
    if n < 0:
        raise ValueError(f"puncture count must be non-negative, got n={n}")


def generators(g: int, n: int) -> tuple[Letter, ...]:
    """Positive generators in the fixed order a1, b1, ..., ag, bg, g1, ..., gn."""
    out = []
    for i in range(1, g + 1):
        out.append(Letter("a", i))
        out.append(Letter("b", i))
    out.extend(Letter("g", j) for j in range(1, n + 1))
    return tuple(out)


def generator_index(x: Letter, g: int) -> int:
    """Position of a letter's generator in :func:`generators` order."""
    if x.kind == "a":
        return 2 * (x.index - 1)
    if x.kind == "b":
        return 2 * (x.index - 1) + 1
    return 2 * g + x.index - 1


@dataclass(frozen=True)
class Presentation:
    g: int
    n: int
    generators: tuple[Letter, ...]
    relator: Word

    def __str__(self) -> str:
        gens = ", ".join(str(x) for x in self.generators)
        return f"< {gens} | {self.relator} >"


def commutator_product(g: int) -> Word:
    w = Word()
    for i in range(1, g + 1):
        w = concat(w, commutator(alpha(i), beta(i)))
    return w


def delta(g: int, n: int) -> Word:
    """The boundary word g_1 ... g_n of the puncture disk."""
    check_gn(g, n)
    return Word([Letter("g", j) for j in range(1, n + 1)])


@lru_cache(maxsize=None)
def presentation(g: int, n: int) -> Presentation:
    check_gn(g, n)
    relator = concat(commutator_product(g), delta(g, n))
    return Presentation(g, n, generators(g, n), relator)


def theta(g: int, k: int) -> Word:
    """a_{k+1} b_{k+1}^-1 a_{k+1}^-1 b_k, the word fixed by the handle-joining twist."""
    if not 1 <= k <= g - 1:
        raise ValueError(f"theta index k={k} outside [1, {g - 1}]")
    return Word(
        [Letter("a", k + 1), Letter("b", k + 1, -1), Letter("a", k + 1, -1), Letter("b", k)]
    )


def xi(g: int, n: int, k: int) -> Word:
    """(g_1 ... g_k)^-1 b_g, the word fixed by the k-th mixing twist."""
    check_gn(g, n)
    if not 1 <= k <= n - 1:
        raise ValueError(f"xi index k={k} outside [1, {n - 1}]")
    head = Word([Letter("g", j) for j in range(1, k + 1)])
    return concat(invert(head), beta(g))
