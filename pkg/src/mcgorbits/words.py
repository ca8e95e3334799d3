"""Free-group words over the generators a_i, b_i (handles) and g_j (punctures).

Words are always kept freely reduced; equality of words is literal equality
of their letter sequences.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional

__all__ = [
    "Letter",
    "Word",
    "alpha",
    "beta",
    "gamma",
    "commutator",
    "concat",
    "conjugate_in_free",
    "cyclic_core",
    "format_word",
    "invert",
    "parse_word",
    "reduce",
]

KINDS = ("a", "b", "g")


class Letter(NamedTuple):
    kind: str  # "a" (alpha), "b" (beta) or "g" (gamma)
    index: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.kind, self.index, -self.sign)

    def positive(self) -> "Letter":
        return self if self.sign == 1 else Letter(self.kind, self.index, 1)

    def __str__(self) -> str:
        tok = f"{self.kind}{self.index}"
        return tok if self.sign == 1 else tok + "^-1"


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for x in letters:
        if stack:
            top = stack[-1]
            if top.kind == x.kind and top.index == x.index and top.sign == -x.sign:
                stack.pop()
                continue
        stack.append(x)
    return tuple(stack)


class Word:
    """A freely reduced word.  Construction reduces its input."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = _free_reduce(letters)
        self._hash: Optional[int] = None

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "Word":
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert(self)
        return Word(base.letters * abs(k))

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def reduce(raw: Iterable[Letter]) -> Word:
    return Word(raw)


def concat(u: Word, v: Word) -> Word:
    a, b = u.letters, v.letters
    # cancel across the junction only; both halves are already reduced
    i = 0
    while i < len(a) and i < len(b):
        x, y = a[-1 - i], b[i]
        if x.kind == y.kind and x.index == y.index and x.sign == -y.sign:
            i += 1
        else:
            break
    return Word._trusted(a[: len(a) - i] + b[i:])


def invert(u: Word) -> Word:
    return Word._trusted(tuple(x.inverse() for x in reversed(u.letters)))


def commutator(u: Word, v: Word) -> Word:
    """Reduced form of u v u^-1 v^-1."""
    return Word(u.letters + v.letters + invert(u).letters + invert(v).letters)


def alpha(i: int, sign: int = 1) -> Word:
    return Word._trusted((Letter("a", i, sign),))


def beta(i: int, sign: int = 1) -> Word:
    return Word._trusted((Letter("b", i, sign),))


def gamma(j: int, sign: int = 1) -> Word:
    return Word._trusted((Letter("g", j, sign),))


def cyclic_core(w: Word) -> tuple[Word, Word]:
    """Split w = p * core * p^-1 with core cyclically reduced; return (p, core)."""
    ls = w.letters
    i, n = 0, len(ls)
    while 2 * i + 1 < n and ls[i] == ls[n - 1 - i].inverse():
        i += 1
    return Word._trusted(ls[:i]), Word._trusted(ls[i : n - i])


def conjugate_in_free(u: Word, v: Word) -> Optional[Word]:
    """Some w with w v w^-1 = u in the free group, or None if not conjugate."""
    p, cu = cyclic_core(u)
    q, cv = cyclic_core(v)
    if len(cu) != len(cv):
        return None
    if not cu:
        return concat(p, invert(q))
    a, b = cu.letters, cv.letters
    for r in range(len(b)):
        if b[r:] + b[:r] == a:
            # cv = x y, cu = y x = x^-1 cv x
            x = Word._trusted(b[:r])
            return concat(concat(p, invert(x)), invert(q))
    return None


def _parse_token(tok: str) -> Letter:
    body, sign = tok, 1
    if tok.endswith("^-1"):
        body, sign = tok[:-3], -1
    elif tok.endswith("^1"):
        body = tok[:-2]
    kind, digits = body[:1], body[1:]
    if kind not in KINDS or not digits.isdigit() or int(digits) < 1:
        raise ValueError(f"bad word token {tok!r}")
    return Letter(kind, int(digits), sign)


def parse_word(text: str, g: Optional[int] = None, n: Optional[int] = None) -> Word:
    """Parse ``"a1 b1 g2 a1^-1"``; indices are range-checked when g, n are given."""
    letters = [_parse_token(tok) for tok in text.split()]
    if g is not None or n is not None:
        for x in letters:
            bound = n if x.kind == "g" else g
            if bound is not None and x.index > bound:
                raise ValueError(f"letter {x} out of range for (g, n) = ({g}, {n})")
    return Word(letters)


def format_word(w: Word) -> str:
    return " ".join(str(x) for x in w.letters)
