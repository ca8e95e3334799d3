"""Relation checks for the generator table and axiom checks for the action."""

from __future__ import annotations

import random
from typing import Callable, NamedTuple

from .cyclo import field
from .mcg import (
    GenName,
    all_generators,
    apply_auto,
    auto_of,
    compose,
    inverse_auto,
    max_tau,
    relator_conjugator,
    word_auto,
)
from .orbit import generator_set
from .reps import AFFINE, AffElt, Rep, act, act_auto, act_word, canon, relator_value, validate
from .surface import delta, theta, xi
from .words import beta, commutator, concat, invert

__all__ = ["Check", "mcg_checks", "random_affine_rep", "reps_checks", "run_all"]

SURFACES = ((1, 0), (1, 1), (1, 2), (1, 3), (2, 0), (2, 2), (3, 2))


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


def _check(name: str, fn: Callable[[], bool]) -> Check:
    try:
        return Check(name, bool(fn()))
    except Exception as exc:  # a crash is a failed check
        return Check(name, False, f"{type(exc).__name__}: {exc}")


def _inverse_identities(g: int, n: int) -> bool:
    for gen in all_generators(g, n):
        a, b = auto_of(gen, g, n), inverse_auto(gen, g, n)
        if not (compose(a, b).is_identity() and compose(b, a).is_identity()):
            return False
    return True


def _braids(g: int, n: int) -> bool:
    s = [auto_of(GenName("s", j), g, n) for j in range(1, n)]
    for i in range(len(s) - 1):
        if compose(compose(s[i], s[i + 1]), s[i]) != compose(compose(s[i + 1], s[i]), s[i + 1]):
            return False
    for i in range(len(s)):
        for j in range(i + 2, len(s)):
            if compose(s[i], s[j]) != compose(s[j], s[i]):
                return False
    return True


def _disjoint(g: int, n: int) -> bool:
    for i in range(1, 3 * g):
        t = auto_of(GenName("t", i), g, n)
        for j in range(1, n):
            s = auto_of(GenName("s", j), g, n)
            if compose(t, s) != compose(s, t):
                return False
    return True


def _fixed_words(g: int, n: int) -> bool:
    for k in range(1, g):
        th = theta(g, k)
        if apply_auto(auto_of(GenName("t", 2 * g + k), g, n), th) != th:
            return False
    for k in range(1, n):
        x = xi(g, n, k)
        if apply_auto(auto_of(GenName("t", 3 * g - 1 + k), g, n), x) != x:
            return False
    return True


def _relator(g: int, n: int) -> bool:
    for gen in all_generators(g, n):
        for h in (gen, gen.inverse()):
            if relator_conjugator(auto_of(h, g, n), g, n) is None:
                return False
    return True


def _mixing_delta(g: int, n: int) -> bool:
    d = delta(g, n)
    for k in range(1, n):
        img = apply_auto(auto_of(GenName("t", 3 * g - 1 + k), g, n), d)
        want = concat(commutator(invert(xi(g, n, k)), beta(g)), d)
        if img != want:
            return False
    return True


def _perms(g: int, n: int) -> bool:
    ident = tuple(range(1, n + 1))
    for i in range(1, max_tau(g, n) + 1):
        if auto_of(GenName("t", i), g, n).perm != ident:
            return False
    for j in range(1, n):
        p = list(ident)
        p[j - 1], p[j] = p[j], p[j - 1]
        if auto_of(GenName("s", j), g, n).perm != tuple(p):
            return False
    return True


def mcg_checks() -> list[Check]:
    out = []
    for g, n in SURFACES:
        tag = f"(g={g},n={n})"
        out.append(_check(f"inverse identities {tag}", lambda: _inverse_identities(g, n)))
        out.append(_check(f"braid relations {tag}", lambda: _braids(g, n)))
        out.append(_check(f"disjoint supports commute {tag}", lambda: _disjoint(g, n)))
        out.append(_check(f"theta/xi fixed {tag}", lambda: _fixed_words(g, n)))
        out.append(_check(f"relator preserved {tag}", lambda: _relator(g, n)))
        out.append(_check(f"mixing twist delta image {tag}", lambda: _mixing_delta(g, n)))
        out.append(_check(f"puncture permutations {tag}", lambda: _perms(g, n)))
    return out


def random_affine_rep(rng: random.Random, g: int, n: int, N: int) -> Rep:
    """A random valid affine representation with torsion linear parts.

    All generators except b_g are drawn freely; b_g = z + t is then solved
    from the relator when a_g is not a translation.
    """
    F = field(N)
    T = F.torsion_order()
    w = F.torsion_generator()

    def elt():
        return F([rng.randint(-3, 3) for _ in range(F.degree)])

    while True:
        vals = [AffElt(w ** rng.randrange(T), elt()) for _ in range(2 * g + n)]
        # b_g linear part 1 keeps the solve linear in t
        vals[2 * g - 1] = AffElt(F.one, F.zero)
        a = vals[2 * g - 2]
        if a.lin.is_one():
            continue
        rep = Rep(AFFINE, g, n, F, vals)
        # relator(t) = z + k + (a - 1) t for the commutator [a_g, z + t]; solve k + (a-1) t = 0
        k = relator_value(rep)
        if not k.lin.is_one():
            continue
        t = -(k.trans * (a.lin - F.one).inverse())
        vals[2 * g - 1] = AffElt(F.one, t)
        rep = Rep(AFFINE, g, n, F, vals)
        if validate(rep):
            return rep


def _left_action(rng: random.Random, rep: Rep) -> bool:
    gens = generator_set(rep.g, rep.n)
    h1, h2 = rng.choice(gens), rng.choice(gens)
    lhs = act_word([h2, h1], rep)  # h2 first, then h1: (h1 h2) . rho
    a = compose(inverse_auto(h2, rep.g, rep.n), inverse_auto(h1, rep.g, rep.n))
    return lhs == act_auto(a, rep) and canon(lhs) == canon(act(h1, act(h2, rep)))


def _pure_conjugates(rng: random.Random, rep: Rep) -> bool:
    g, n = rep.g, rep.n
    gens = generator_set(g, n)
    word = [rng.choice(gens) for _ in range(rng.randint(1, 6))]
    if n >= 2:
        perm = word_auto(word, g, n).perm
        # append the inverse permutation through half-twists to land in the pure group
        target = list(perm)
        fix: list[GenName] = []
        for i in range(n):
            j = target.index(i + 1)
            while j > i:
                target[j - 1], target[j] = target[j], target[j - 1]
                fix.append(GenName("s", j))
                j -= 1
        word = word + fix
    a = word_auto(word, g, n)
    if not a.is_pure():
        return False
    r2 = act_word(word, rep)
    for j in range(1, n + 1):
        x, y = rep.gamma(j), r2.gamma(j)
        if x.lin != y.lin:
            return False
        if x.lin.is_one() and (x.trans == 0) != (y.trans == 0):
            return False
    return True


def reps_checks(seed: int = 0, cases: int = 40) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for i in range(cases):
        g, n = SURFACES[i % len(SURFACES)]
        N = (2, 3, 4, 5, 6)[i % 5]
        rep = random_affine_rep(rng, g, n, N)
        tag = f"#{i} (g={g},n={n},N={N})"
        out.append(_check(f"act preserves validity {tag}", lambda: all(
            validate(act(h, rep)) for h in all_generators(g, n))))
        out.append(_check(f"left action {tag}", lambda: _left_action(rng, rep)))
        out.append(_check(f"pure words conjugate punctures {tag}", lambda: _pure_conjugates(rng, rep)))
    return out


def run_all(seed: int = 0) -> list[Check]:
    return mcg_checks() + reps_checks(seed)
