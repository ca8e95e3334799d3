"""Finite-orbit decision procedure and orbit-size bounds.

Scalar and abelian affine classes have finite orbit exactly when the image is
finite.  Non-abelian affine classes are finite only in genus one, where a
prepared form identifies them with a member of the rho_{mu,c} family.
Reducible rank-2 classes split into a scalar part and an affine part.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Optional, Union

from .cyclo import CycloElt, euler_phi, torsion_log
from .mcg import GenName, format_mcg_word
from .orbit import generator_set
from .reps import (
    AFFINE,
    GL2,
    SCALAR,
    AffElt,
    Rep,
    UpperElt,
    act,
    act_word,
    affine_part,
    aff_commutator,
    canon,
    image_closure,
    image_order,
    is_abelian,
    scalar_part,
    split_pair,
    validate,
)

__all__ = [
    "Classification",
    "PrepareError",
    "PreparedForm",
    "bounds_B1",
    "bounds_B2",
    "bounds_scalar",
    "classify",
    "count_scalar_orbit",
    "elimination_check",
    "expected_affine_count",
    "prepare",
]

FINITE, INFINITE = "finite", "infinite"

ABELIAN_FINITE = "abelian_finite_image"
ABELIAN_INFINITE = "abelian_infinite_image"
GENUS1_MU_C = "genus1_mu_c"
HIGHER_GENUS = "higher_genus_non_abelian"
NON_TORSION = "non_torsion_linear_part"
TRANSLATION = "translation_group"
NON_TRANSLATION_PUNCTURE = "non_translation_puncture"

NOTE_FINITE = "finite orbit: the universal isomonodromic deformation is algebraic"
NOTE_INFINITE = "infinite orbit: the universal isomonodromic deformation is not algebraic"


class PrepareError(ValueError):
    pass


@dataclass
class PreparedForm:
    """A conjugate of word . rho with a_g -> mu^m_g z and b_g -> z + 1."""

    rep: Rep
    word: list[GenName]
    conjugator: AffElt
    mu: CycloElt  # generator of the torsion of the field
    N: int  # order of the linear image of the prepared handle
    exponents: list[int]  # m_1 .. m_g with respect to mu
    a: list[CycloElt]  # translations of a_1 .. a_{g-1}
    b: list[CycloElt]  # translations of b_1 .. b_{g-1}
    c: list[CycloElt]
    d: list[CycloElt]  # linear parts of the punctures
    failure: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "word": format_mcg_word(self.word),
            "conjugator": {"a": self.conjugator.lin.to_json(), "b": self.conjugator.trans.to_json()},
            "exponents": self.exponents,
            "a": [x.to_json() for x in self.a],
            "b": [x.to_json() for x in self.b],
            "c": [x.to_json() for x in self.c],
            "failure": self.failure,
        }


@dataclass
class Classification:
    verdict: str
    reason: str
    bounds: Optional[tuple[int, int]] = None
    expected_size: Optional[int] = None
    details: dict = dc_field(default_factory=dict)

    @property
    def algebraizability_note(self) -> str:
        return NOTE_FINITE if self.verdict == FINITE else NOTE_INFINITE

    @property
    def finite(self) -> bool:
        return self.verdict == FINITE

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "bounds": list(self.bounds) if self.bounds else None,
            "expected_size": self.expected_size,
            "algebraizability_note": self.algebraizability_note,
            "details": self.details,
        }


# -- counting formulas -----------------------------------------------------------------


def bounds_scalar(N: int, g: int) -> tuple[int, int]:
    if N < 1 or g < 1:
        raise ValueError("bounds_scalar needs N >= 1 and g >= 1")
    return N ** (2 * g - 1), N ** (2 * g)


def bounds_B1(N1: int, N2: int, Nrho: int, g: int) -> tuple[int, int]:
    """Bounds for a split class with character image orders N1, N2.

    The lower bound max(N_i^(2g-1))/2 is rounded up, which is equivalent for
    integer orbit sizes.
    """
    if min(N1, N2, Nrho) < 1 or g < 1:
        raise ValueError("bounds_B1 needs positive orders and g >= 1")
    top = max(N1, N2) ** (2 * g - 1)
    return -(-top // 2), Nrho ** (2 * g)


def bounds_B2(N: int, n_prime: int, N2: int) -> tuple[int, int]:
    if N < 2 or n_prime < 1 or N2 < 1:
        raise ValueError("bounds_B2 needs N >= 2, n' >= 1, N2 >= 1")
    phi = euler_phi(N)
    lower = max(N2, phi * (2 * N - phi) * N ** (n_prime - 1))
    upper = (N * N - 1) * N ** (n_prime - 1) * N2 * N2
    return lower, upper


def k_set_size(N: int) -> int:
    return sum(1 for k1 in range(1, N + 1) for k2 in range(1, N + 1) if math.gcd(k1, k2, N) == 1)


def expected_affine_count(N: int, n_prime: int) -> int:
    if N < 2 or n_prime < 1:
        raise ValueError("expected_affine_count needs N >= 2 and n' >= 1")
    return k_set_size(N) * N ** (n_prime - 1)


def _exponents(values, order: int) -> list[int]:
    """Exponents of torsion values with respect to a primitive order-th root."""
    out = []
    for v in values:
        k = torsion_log(v)
        if k is None:
            raise ValueError("value is not a root of unity")
        T = v.field.torsion_order()
        out.append(k // (T // order))
    return out


def count_scalar_orbit(lam: Rep) -> int:
    """Size of the orbit of a finite-image scalar representation, by enumeration."""
    if lam.kind != SCALAR:
        raise ValueError("count_scalar_orbit needs a scalar representation")
    N = image_order(lam)
    if N == math.inf:
        raise ValueError("scalar representation with infinite image")
    N = int(N)
    g = lam.g
    m = _exponents(lam.gammas, N)
    base = math.gcd(N, *m) if m else N
    return sum(
        1 for v in itertools.product(range(N), repeat=2 * g) if math.gcd(base, *v) == 1
    )


# -- prepared form -------------------------------------------------------------------


def _handle_commutator(rep: Rep, g: int) -> AffElt:
    return aff_commutator(rep.alpha(g), rep.beta(g))


def _search_nonabelian_handle(rep: Rep, search_cap: int) -> list[GenName]:
    """Shortest word w (BFS order) with [a_g, b_g] non-trivial on w . rep."""
    g = rep.g
    if not _handle_commutator(rep, g).is_identity():
        return []
    gens = generator_set(g, rep.n)
    start = canon(rep).hkey
    seen = {start}
    queue = deque([(rep, [])])
    while queue:
        r, word = queue.popleft()
        for gen in gens:
            r2 = act(gen, r)
            key = canon(r2).hkey
            if key in seen:
                continue
            if not _handle_commutator(r2, g).is_identity():
                return word + [gen]
            if len(seen) >= search_cap:
                raise PrepareError(f"no handle with non-abelian image within {search_cap} classes")
            seen.add(key)
            queue.append((r2, word + [gen]))
    raise PrepareError("no handle with non-abelian image in the whole orbit")


def _handle_logs(rep: Rep, i: int) -> tuple[int, int, int]:
    """Exponents of the handle's linear parts, base zeta_N when both lie in mu_N."""
    F = rep.field
    T = F.torsion_order()
    m, n = torsion_log(rep.alpha(i).lin), torsion_log(rep.beta(i).lin)
    if T != F.N and m % 2 == 0 and n % 2 == 0:
        # N odd: w = -zeta, and w^k = zeta^k for even k
        return m % F.N, n % F.N, F.N
    return m % T, n % T, T


def _reduce_handle(rep: Rep, i: int, word: list[GenName]) -> Rep:
    """Drive (m_i, n_i) to (gcd, 0) with the twists t_{2i}, t_{2i-1}."""
    while True:
        m, n, _ = _handle_logs(rep, i)
        if n == 0:
            return rep
        if m == 0:
            gen = GenName("t", 2 * i, -1)  # (m, n) -> (m + n, n)
        elif m <= n:
            gen = GenName("t", 2 * i - 1)  # (m, n) -> (m, n - m)
        else:
            gen = GenName("t", 2 * i)  # (m, n) -> (m - n, n)
        rep = act(gen, rep)
        word.append(gen)


def _conjugate(rep: Rep, h: AffElt) -> Rep:
    hi = h.inverse()
    return rep.replace([h * v * hi for v in rep.values])


def prepare(rep: Rep, search_cap: int = 10_000) -> PreparedForm:
    """Bring a non-abelian affine representation with torsion linear part into prepared form."""
    if rep.kind != AFFINE:
        raise PrepareError("prepare needs an affine representation")
    if is_abelian(rep):
        raise PrepareError("prepare needs a representation with non-abelian image")
    if any(torsion_log(v.lin) is None for v in rep.values):
        raise PrepareError("linear part is not torsion")
    F, g = rep.field, rep.g
    T = F.torsion_order()
    word = _search_nonabelian_handle(rep, search_cap)
    r = act_word(word, rep)
    for i in range(1, g + 1):
        r = _reduce_handle(r, i, word)
    ag, bg = r.alpha(g), r.beta(g)
    # kill the translation of a_g, then scale b_g to z + 1
    s = ag.trans * (ag.lin - F.one).inverse()
    t = bg.trans - s * (bg.lin - F.one)
    h = AffElt(t.inverse(), t.inverse() * s)
    r = _conjugate(r, h)
    exps = [torsion_log(r.alpha(i).lin) for i in range(1, g + 1)]
    order = T // math.gcd(T, exps[-1])
    d = [v.lin for v in r.gammas]
    failure = None
    if any(not x.is_one() for x in d):
        failure = NON_TRANSLATION_PUNCTURE
    return PreparedForm(
        rep=r,
        word=word,
        conjugator=h,
        mu=F.torsion_generator(),
        N=order,
        exponents=exps,
        a=[r.alpha(i).trans for i in range(1, g)],
        b=[r.beta(i).trans for i in range(1, g)],
        c=[v.trans for v in r.gammas],
        d=d,
        failure=failure,
    )


def elimination_check(p: PreparedForm) -> bool:
    """Whether handle g-1 of a prepared form meets all three elimination conditions."""
    r = p.rep
    g = r.g
    if g < 2:
        raise ValueError("elimination_check needs g >= 2")
    prev, last = r.alpha(g - 1), r.alpha(g)
    return (
        (prev.lin * last.lin).is_one()
        and not prev.trans
        and not r.beta(g - 1).trans
        and r.beta(g - 1).lin.is_one()
    )


def _elimination_evidence(rep: Rep, search_cap: int, rounds: int = 4) -> dict:
    """Apply t_{3g-1}^-1 then t_{2g} while the elimination conditions still hold."""
    g = rep.g
    p = prepare(rep, search_cap)
    applied: list[GenName] = list(p.word)
    for _ in range(rounds):
        if not elimination_check(p):
            return {"elimination_check": False, "word": format_mcg_word(applied)}
        step = [GenName("t", 3 * g - 1, -1), GenName("t", 2 * g)]
        applied += step
        p = prepare(act_word(step, p.rep), search_cap)
        applied += p.word
    return {"elimination_check": elimination_check(p), "word": format_mcg_word(applied)}


# -- the decision procedure ----------------------------------------------------------------


def _n_prime_affine(rep: Rep) -> int:
    return sum(1 for v in rep.gammas if not v.is_identity())


def _n_prime_gl2(rep: Rep) -> int:
    return sum(1 for v in rep.gammas if not v.is_scalar_matrix())


def _order(x: Union[int, float]) -> Optional[int]:
    return None if x == math.inf else int(x)


def _classify_scalar(rep: Rep) -> Classification:
    N = _order(image_order(rep))
    if N is None:
        return Classification(INFINITE, ABELIAN_INFINITE, details={"image_order": "infinite"})
    return Classification(
        FINITE,
        ABELIAN_FINITE,
        bounds=bounds_scalar(N, rep.g),
        expected_size=count_scalar_orbit(rep),
        details={"image_order": N},
    )


def _classify_affine(rep: Rep, search_cap: int) -> Classification:
    F = rep.field
    if is_abelian(rep):
        if all(v.lin.is_one() for v in rep.values) and any(v.trans for v in rep.values):
            return Classification(INFINITE, TRANSLATION, details={"image_order": "infinite"})
        N = _order(image_order(rep))
        if N is None:
            return Classification(INFINITE, ABELIAN_INFINITE, details={"image_order": "infinite"})
        lin = Rep(SCALAR, rep.g, rep.n, F, [v.lin for v in rep.values])
        return Classification(
            FINITE,
            ABELIAN_FINITE,
            bounds=bounds_scalar(N, rep.g),
            expected_size=count_scalar_orbit(lin),
            details={"image_order": N},
        )
    if any(torsion_log(v.lin) is None for v in rep.values):
        return Classification(INFINITE, NON_TORSION)
    if rep.g >= 2:
        return Classification(INFINITE, HIGHER_GENUS, details=_elimination_evidence(rep, search_cap))
    p = prepare(rep, search_cap)
    if p.failure:
        return Classification(INFINITE, p.failure, details={"prepared": p.to_json()})
    mu = p.rep.alpha(1).lin
    scale = -(mu - F.one).inverse()
    c = [x * scale for x in p.c]
    n_prime = _n_prime_affine(rep)
    N = p.N
    return Classification(
        FINITE,
        GENUS1_MU_C,
        bounds=bounds_B2(N, n_prime, 1),
        expected_size=expected_affine_count(N, n_prime),
        details={
            "mu_order": N,
            "mu": mu.to_json(),
            "c": [x.to_json() for x in c],
            "n_prime": n_prime,
            "prepared": p.to_json(),
        },
    )


def _classify_gl2(rep: Rep, search_cap: int) -> Classification:
    pair = split_pair(rep)
    if pair is not None:
        F = rep.field
        l1 = Rep(SCALAR, rep.g, rep.n, F, pair[0])
        l2 = Rep(SCALAR, rep.g, rep.n, F, pair[1])
        n1, n2 = _order(image_order(l1)), _order(image_order(l2))
        if n1 is None or n2 is None:
            return Classification(INFINITE, ABELIAN_INFINITE, details={"split": True})
        diag = rep.replace([UpperElt(x, F.zero, y) for x, y in zip(*pair)])
        n_rho = image_closure(diag)
        return Classification(
            FINITE,
            ABELIAN_FINITE,
            bounds=bounds_B1(n1, n2, n_rho, rep.g),
            details={"split": True, "image_orders": [n1, n2], "image_order": n_rho},
        )
    lam = scalar_part(rep)
    n2 = _order(image_order(lam))
    sub = _classify_affine(affine_part(rep), search_cap)
    details = {"split": False, "scalar_image_order": n2 if n2 else "infinite", "affine": sub.to_json()}
    if n2 is None:
        return Classification(INFINITE, ABELIAN_INFINITE, details=details)
    if not sub.finite or sub.reason != GENUS1_MU_C:
        return Classification(sub.verdict, sub.reason, details=details)
    N = sub.details["mu_order"]
    n_prime = _n_prime_gl2(rep)
    return Classification(FINITE, GENUS1_MU_C, bounds=bounds_B2(N, n_prime, n2), details=details)


def classify(rep: Rep, search_cap: int = 10_000) -> Classification:
    if not validate(rep):
        raise ValueError("representation does not satisfy the surface relation")
    if rep.kind == SCALAR:
        return _classify_scalar(rep)
    if rep.kind == AFFINE:
        return _classify_affine(rep, search_cap)
    if rep.kind == GL2:
        return _classify_gl2(rep, search_cap)
    raise ValueError(f"unknown representation kind {rep.kind!r}")
