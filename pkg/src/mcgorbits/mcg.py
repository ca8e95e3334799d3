"""Generators of the mapping class group acting on the surface group.

Twists t_1 .. t_{3g-1} live on the handles (t_{2k}: a_k -> a_k b_k,
t_{2k-1}: b_k -> b_k a_k, t_{2g+k}: joins handles k and k+1); when n >= 2 the
mixing twists t_{3g} .. t_{3g+n-2} join the last handle to the punctures, and
the half-twists s_1 .. s_{n-1} braid the punctures.

Automorphisms compose as (a o b)(x) = a(b(x)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from .surface import check_gn, delta, generator_index, generators, presentation, theta, xi
from .words import Letter, Word, concat, conjugate_in_free, gamma, invert

__all__ = [
    "Automorphism",
    "GenName",
    "all_generators",
    "apply_auto",
    "auto_blocks",
    "auto_of",
    "compose",
    "format_mcg_word",
    "identity_auto",
    "inverse_auto",
    "max_tau",
    "parse_mcg_word",
    "relator_conjugator",
    "sigma_cycl",
    "sigma_cycl_power",
]


class GenName(NamedTuple):
    kind: str  # "t" (Dehn twist) or "s" (half-twist)
    index: int
    power: int = 1

    def inverse(self) -> "GenName":
        return GenName(self.kind, self.index, -self.power)

    def __str__(self) -> str:
        tok = f"{self.kind}{self.index}"
        return tok if self.power == 1 else tok + "^-1"


def max_tau(g: int, n: int) -> int:
    return 3 * g - 1 + max(0, n - 1)


def check_gen(gen: GenName, g: int, n: int) -> None:
    check_gn(g, n)
    if gen.power not in (1, -1):
        raise ValueError(f"generator power must be +-1, got {gen.power}")
    if gen.kind == "t":
        top = max_tau(g, n)
        if not 1 <= gen.index <= top:
            raise ValueError(f"twist index {gen.index} outside [1, {top}] for (g, n) = ({g}, {n})")
    elif gen.kind == "s":
        if not 1 <= gen.index <= n - 1:
            raise ValueError(f"half-twist index {gen.index} outside [1, {n - 1}] for n = {n}")
    else:
        raise ValueError(f"unknown generator kind {gen.kind!r}")


def all_generators(g: int, n: int) -> tuple[GenName, ...]:
    """Positive generators t_1 .. t_max, s_1 .. s_{n-1}."""
    return tuple(GenName("t", i) for i in range(1, max_tau(g, n) + 1)) + tuple(
        GenName("s", j) for j in range(1, n)
    )


@dataclass(frozen=True)
class Automorphism:
    """Images of the positive generators (in :func:`generators` order) plus the
    induced permutation of puncture indices (1-based, ``perm[i-1]``)."""

    g: int
    n: int
    images: tuple[Word, ...]
    perm: tuple[int, ...]

    def image(self, x: Letter) -> Word:
        w = self.images[generator_index(x, self.g)]
        return w if x.sign == 1 else invert(w)

    def __call__(self, w: Word) -> Word:
        return apply_auto(self, w)

    def is_identity(self) -> bool:
        gens = generators(self.g, self.n)
        return all(img.letters == (x,) for img, x in zip(self.images, gens))

    def is_pure(self) -> bool:
        return self.perm == tuple(range(1, self.n + 1))

    def __str__(self) -> str:
        parts = []
        for x, img in zip(generators(self.g, self.n), self.images):
            if img.letters != (x,):
                parts.append(f"{x} -> {img or '1'}")
        return "; ".join(parts) or "identity"


def identity_auto(g: int, n: int) -> Automorphism:
    return Automorphism(
        g, n, tuple(Word._trusted((x,)) for x in generators(g, n)), tuple(range(1, n + 1))
    )


def _build(g: int, n: int, changes: dict[Letter, Word], swap: Optional[int] = None) -> Automorphism:
    gens = generators(g, n)
    images = tuple(changes.get(x, Word._trusted((x,))) for x in gens)
    perm = list(range(1, n + 1))
    if swap is not None:
        perm[swap - 1], perm[swap] = perm[swap], perm[swap - 1]
    return Automorphism(g, n, images, tuple(perm))


def _w(*parts: Word) -> Word:
    out = Word()
    for p in parts:
        out = concat(out, p)
    return out


@lru_cache(maxsize=None)
def auto_blocks(gen: GenName, g: int, n: int) -> tuple[tuple[Word, ...], dict]:
    """Unreduced images of the moved generators as products of letters and blocks.

    Returns (blocks, images) where images maps a generator Letter to a tuple
    of items, each a Letter or an int indexing ``blocks``.  Reducing the
    concatenation gives :func:`auto_of`; shared blocks let callers evaluate
    the fixed words Theta and Xi once.
    """
    check_gen(gen, g, n)
    k, inv = gen.index, gen.power == -1
    A = lambda i, e=1: Letter("a", i, e)  # noqa: E731
    B = lambda i, e=1: Letter("b", i, e)  # noqa: E731
    G = lambda i, e=1: Letter("g", i, e)  # noqa: E731
    if gen.kind == "s":
        if not inv:
            return (), {G(k): (G(k), G(k + 1), G(k, -1)), G(k + 1): (G(k),)}
        return (), {G(k): (G(k + 1),), G(k + 1): (G(k + 1, -1), G(k), G(k + 1))}
    e = -1 if inv else 1
    if k <= 2 * g and k % 2 == 0:
        h = k // 2
        return (), {A(h): (A(h), B(h, e))}
    if k <= 2 * g:
        h = (k + 1) // 2
        return (), {B(h): (B(h), A(h, e))}
    if k <= 3 * g - 1:
        h = k - 2 * g
        th = theta(g, h)
        blocks = (th, invert(th)) if not inv else (invert(th), th)
        # forward: a_{h+1} -> T^-1 a_{h+1}, a_h -> a_h T, b_h -> T^-1 b_h T
        return blocks, {
            A(h + 1): (1, A(h + 1)),
            A(h): (A(h), 0),
            B(h): (1, B(h), 0),
        }
    h = k - (3 * g - 1)
    x = xi(g, n, h)
    blocks = (x, invert(x)) if not inv else (invert(x), x)
    images = {A(g): (A(g), 0), B(g): (1, B(g), 0)}
    for i in range(1, h + 1):
        images[G(i)] = (1, G(i), 0)
    return blocks, images


@lru_cache(maxsize=None)
def auto_of(gen: GenName, g: int, n: int) -> Automorphism:
    """The automorphism induced by a generator (or, for power -1, its inverse)."""
    blocks, images = auto_blocks(gen, g, n)
    changes = {}
    for x, items in images.items():
        letters: list[Letter] = []
        for it in items:
            letters.extend(blocks[it].letters if isinstance(it, int) else (it,))
        changes[x] = Word(letters)
    return _build(g, n, changes, swap=gen.index if gen.kind == "s" else None)


def inverse_auto(gen: GenName, g: int, n: int) -> Automorphism:
    return auto_of(gen.inverse(), g, n)


def apply_auto(a: Automorphism, w: Word) -> Word:
    out: list[Letter] = []
    g = a.g
    for x in w.letters:
        img = a.images[generator_index(x, g)]
        out.extend(img.letters if x.sign == 1 else invert(img).letters)
    return Word(out)


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """(a o b)(x) = a(b(x))."""
    if (a.g, a.n) != (b.g, b.n):
        raise ValueError("automorphisms of different surfaces")
    images = tuple(apply_auto(a, img) for img in b.images)
    perm = tuple(a.perm[p - 1] for p in b.perm)
    return Automorphism(a.g, a.n, images, perm)


def word_auto(word: Sequence[GenName], g: int, n: int) -> Automorphism:
    """Automorphism of the product word[0] o word[1] o ... as written."""
    out = identity_auto(g, n)
    for gen in word:
        out = compose(out, auto_of(gen, g, n))
    return out


def sigma_cycl(n: int, g: int = 1) -> Automorphism:
    """s_{n-1} o ... o s_1 (s_1 applied first)."""
    out = identity_auto(g, n)
    for j in range(1, n):
        out = compose(auto_of(GenName("s", j), g, n), out)
    return out


def sigma_cycl_power(n: int, k: int, g: int = 1) -> Automorphism:
    """Closed form of sigma_cycl^k for 1 <= k <= n."""
    check_gn(g, n)
    if not 1 <= k <= n:
        raise ValueError(f"power k={k} outside [1, {n}]")
    d = delta(g, n)
    changes = {}
    for i in range(1, n + 1):
        if i <= k:
            changes[Letter("g", i)] = _w(d, gamma(n + i - k), ~d)
        else:
            changes[Letter("g", i)] = gamma(i - k)
    out = _build(g, n, changes)
    perm = tuple((i - k - 1) % n + 1 for i in range(1, n + 1))
    return Automorphism(g, n, out.images, perm)


def relator_conjugator(a: Automorphism, g: int, n: int) -> Optional[Word]:
    """Some w with a(R) = w R w^-1 for the surface relator R, else None."""
    r = presentation(g, n).relator
    return conjugate_in_free(apply_auto(a, r), r)


def parse_mcg_word(text: str, g: Optional[int] = None, n: Optional[int] = None) -> list[GenName]:
    """Parse ``"t1 t5^-1 s2"``; validated against (g, n) when both are given."""
    out = []
    for tok in text.split():
        body, power = tok, 1
        if tok.endswith("^-1"):
            body, power = tok[:-3], -1
        elif tok.endswith("^1"):
            body = tok[:-2]
        kind, digits = body[:1], body[1:]
        if kind not in ("t", "s") or not digits.isdigit():
            raise ValueError(f"bad mapping class token {tok!r}")
        gen = GenName(kind, int(digits), power)
        if g is not None and n is not None:
            check_gen(gen, g, n)
        out.append(gen)
    return out


def format_mcg_word(word: Iterable[GenName]) -> str:
    return " ".join(str(x) for x in word)


def invert_mcg_word(word: Sequence[GenName]) -> list[GenName]:
    return [x.inverse() for x in reversed(word)]
