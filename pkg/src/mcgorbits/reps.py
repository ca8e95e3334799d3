"""Scalar, affine and upper-triangular rank-2 representations of the surface group.

A representation stores one group element per generator in the order
a1, b1, ..., ag, bg, g1, ..., gn.  Words evaluate left to right,
rho(u v) = rho(u) rho(v), with affine maps composing as functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .cyclo import CycloElt, Field, as_root_of_unity
from .mcg import Automorphism, GenName, auto_of, check_gen
from .surface import check_gn, generator_index, generators, presentation
from .words import Word

__all__ = [
    "AffElt",
    "CanonClass",
    "Rep",
    "UpperElt",
    "act",
    "act_auto",
    "act_word",
    "aff_commutator",
    "aff_conj",
    "affine_part",
    "canon",
    "canon_affine",
    "canon_gl2",
    "canonicalize",
    "conjugacy_equal",
    "image_closure",
    "image_order",
    "is_abelian",
    "is_totally_reducible",
    "rho_mu_c",
    "scalar_part",
    "split_pair",
    "tensor",
    "validate",
]

SCALAR, AFFINE, GL2 = "scalar", "affine", "gl2_upper"
KINDS = (SCALAR, AFFINE, GL2)


class AffElt:
    """The affine map z -> lin*z + trans."""

    __slots__ = ("lin", "trans")

    def __init__(self, lin: CycloElt, trans: CycloElt):
        if not lin:
            raise ValueError("affine map with zero linear part")
        self.lin = lin
        self.trans = trans

    @classmethod
    def identity(cls, F: Field) -> "AffElt":
        return cls(F.one, F.zero)

    def __mul__(self, other: "AffElt") -> "AffElt":
        # (f o h)(z) = a_f (a_h z + b_h) + b_f
        return AffElt(self.lin * other.lin, self.lin * other.trans + self.trans)

    def inverse(self) -> "AffElt":
        ia = self.lin.inverse()
        return AffElt(ia, -(ia * self.trans))

    def __call__(self, z: CycloElt) -> CycloElt:
        return self.lin * z + self.trans

    def is_identity(self) -> bool:
        return self.lin.is_one() and not self.trans

    def __eq__(self, other) -> bool:
        if isinstance(other, AffElt):
            return self.lin == other.lin and self.trans == other.trans
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lin, self.trans))

    def __reduce__(self):
        return (AffElt, (self.lin, self.trans))

    def __repr__(self) -> str:
        return f"AffElt({self.lin}, {self.trans})"

    def __str__(self) -> str:
        b = "" if not self.trans else f" + ({self.trans})"
        return f"({self.lin})z{b}"


class UpperElt:
    """The matrix [[top, corner], [0, bottom]]."""

    __slots__ = ("top", "corner", "bottom")

    def __init__(self, top: CycloElt, corner: CycloElt, bottom: CycloElt):
        if not top or not bottom:
            raise ValueError("singular upper-triangular matrix")
        self.top = top
        self.corner = corner
        self.bottom = bottom

    @classmethod
    def identity(cls, F: Field) -> "UpperElt":
        return cls(F.one, F.zero, F.one)

    def __mul__(self, o: "UpperElt") -> "UpperElt":
        return UpperElt(
            self.top * o.top, self.top * o.corner + self.corner * o.bottom, self.bottom * o.bottom
        )

    def inverse(self) -> "UpperElt":
        it, ib = self.top.inverse(), self.bottom.inverse()
        return UpperElt(it, -(it * self.corner * ib), ib)

    def is_identity(self) -> bool:
        return self.top.is_one() and self.bottom.is_one() and not self.corner

    def is_scalar_matrix(self) -> bool:
        return self.top == self.bottom and not self.corner

    def __eq__(self, other) -> bool:
        if isinstance(other, UpperElt):
            return (self.top, self.corner, self.bottom) == (other.top, other.corner, other.bottom)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.top, self.corner, self.bottom))

    def __reduce__(self):
        return (UpperElt, (self.top, self.corner, self.bottom))

    def __repr__(self) -> str:
        return f"UpperElt({self.top}, {self.corner}, {self.bottom})"


Element = Union[CycloElt, AffElt, UpperElt]


def _identity(kind: str, F: Field) -> Element:
    if kind == SCALAR:
        return F.one
    if kind == AFFINE:
        return AffElt.identity(F)
    return UpperElt.identity(F)


def _is_identity(x: Element) -> bool:
    return x.is_one() if isinstance(x, CycloElt) else x.is_identity()


def aff_conj(f: AffElt, by: AffElt) -> AffElt:
    """by o f o by^-1; for by = lam*z + s this is a*z + lam*b - s*(a - 1)."""
    lam, s = by.lin, by.trans
    return AffElt(f.lin, lam * f.trans - s * (f.lin - 1))


def aff_commutator(f: AffElt, h: AffElt) -> AffElt:
    return f * h * f.inverse() * h.inverse()


class Rep:
    """A representation: one element per generator, all over one field."""

    __slots__ = ("kind", "g", "n", "field", "values", "_inverses")

    def __init__(self, kind: str, g: int, n: int, F: Field, values: Sequence[Element]):
        if kind not in KINDS:
            raise ValueError(f"unknown representation kind {kind!r}")
        check_gn(g, n)
        values = tuple(values)
        if len(values) != 2 * g + n:
            raise ValueError(f"expected {2 * g + n} generator values, got {len(values)}")
        self.kind = kind
        self.g = g
        self.n = n
        self.field = F
        self.values = values
        self._inverses: Optional[tuple] = None

    @classmethod
    def from_lists(
        cls,
        kind: str,
        F: Field,
        alpha: Sequence[Element],
        beta: Sequence[Element],
        gamma: Sequence[Element] = (),
    ) -> "Rep":
        if len(alpha) != len(beta):
            raise ValueError("alpha and beta lists differ in length")
        values: list[Element] = []
        for a, b in zip(alpha, beta):
            values.extend((a, b))
        values.extend(gamma)
        return cls(kind, len(alpha), len(gamma), F, values)

    @classmethod
    def trivial(cls, kind: str, g: int, n: int, F: Field) -> "Rep":
        e = _identity(kind, F)
        return cls(kind, g, n, F, [e] * (2 * g + n))

    def alpha(self, i: int) -> Element:
        return self.values[2 * (i - 1)]

    def beta(self, i: int) -> Element:
        return self.values[2 * (i - 1) + 1]

    def gamma(self, j: int) -> Element:
        return self.values[2 * self.g + j - 1]

    @property
    def alphas(self) -> tuple:
        return self.values[0 : 2 * self.g : 2]

    @property
    def betas(self) -> tuple:
        return self.values[1 : 2 * self.g : 2]

    @property
    def gammas(self) -> tuple:
        return self.values[2 * self.g :]

    def identity(self) -> Element:
        return _identity(self.kind, self.field)

    def inverses(self) -> tuple:
        if self._inverses is None:
            self._inverses = tuple(v.inverse() for v in self.values)
        return self._inverses

    def replace(self, values: Sequence[Element]) -> "Rep":
        return Rep(self.kind, self.g, self.n, self.field, values)

    def eval(self, w: Word) -> Element:
        vals, invs, g = self.values, self.inverses(), self.g
        out = None
        for x in w.letters:
            i = generator_index(x, g)
            y = vals[i] if x.sign == 1 else invs[i]
            out = y if out is None else out * y
        return self.identity() if out is None else out

    def __eq__(self, other) -> bool:
        if isinstance(other, Rep):
            return (
                self.kind == other.kind
                and (self.g, self.n, self.field.N) == (other.g, other.n, other.field.N)
                and self.values == other.values
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.kind, self.g, self.n, self.field.N, self.values))

    def __reduce__(self):
        return (Rep, (self.kind, self.g, self.n, self.field, self.values))

    def __repr__(self) -> str:
        parts = [f"{x}={v}" for x, v in zip(generators(self.g, self.n), self.values)]
        return f"Rep({self.kind}, g={self.g}, n={self.n}, N={self.field.N}: {', '.join(parts)})"


def relator_value(rep: Rep) -> Element:
    return rep.eval(presentation(rep.g, rep.n).relator)


def validate(rep: Rep) -> bool:
    """True iff the surface relator evaluates to the identity."""
    return _is_identity(relator_value(rep))


# -- the mapping class group action -------------------------------------------------


@lru_cache(maxsize=None)
def _action_plan(gen: GenName, g: int, n: int) -> tuple:
    """Moved generators of gen . rho: (target, ((source, sign), ...)) from gen^-1's images."""
    check_gen(gen, g, n)
    a = auto_of(gen.inverse(), g, n)
    plan = []
    for t, (x, img) in enumerate(zip(generators(g, n), a.images)):
        if img.letters != (x,):
            plan.append((t, tuple((generator_index(y, g), y.sign) for y in img.letters)))
    return tuple(plan)


def act(gen: GenName, rep: Rep) -> Rep:
    """(gen . rho)(x) = rho(gen^-1 (x))."""
    plan = _action_plan(gen, rep.g, rep.n)
    vals, invs = rep.values, rep.inverses()
    new = list(vals)
    for t, seq in plan:
        out = None
        for i, s in seq:
            y = vals[i] if s == 1 else invs[i]
            out = y if out is None else out * y
        new[t] = rep.identity() if out is None else out
    return Rep(rep.kind, rep.g, rep.n, rep.field, new)


def act_word(word: Iterable[GenName], rep: Rep) -> Rep:
    """Apply the generators in order: the first one acts first."""
    for gen in word:
        rep = act(gen, rep)
    return rep


def act_auto(a: Automorphism, rep: Rep) -> Rep:
    """The representation x -> rho(a(x))."""
    return rep.replace([rep.eval(img) for img in a.images])


# -- canonical forms -----------------------------------------------------------------


def _elt_text(x: Element) -> str:
    if isinstance(x, CycloElt):
        return ",".join(x.to_json())
    if isinstance(x, AffElt):
        return ",".join(x.lin.to_json()) + ":" + ",".join(x.trans.to_json())
    return ":".join(",".join(e.to_json()) for e in (x.top, x.corner, x.bottom))


def _elt_coeffs(x: Element) -> tuple:
    if isinstance(x, CycloElt):
        return x.coeffs
    if isinstance(x, AffElt):
        return x.lin.coeffs + x.trans.coeffs
    return x.top.coeffs + x.corner.coeffs + x.bottom.coeffs


@dataclass(frozen=True, eq=False)
class CanonClass:
    """Canonical representative of a conjugacy class.

    ``kind`` is one of "scalar", "affine", "gl2-split", "gl2-nonsplit".  For
    the split case ``values`` concatenates both diagonal characters (sorted);
    for the non-split case the scalar part followed by the canonical affine part.
    """

    kind: str
    values: tuple
    trivial: bool = False

    @property
    def hkey(self) -> tuple:
        return (self.kind, tuple(_elt_coeffs(v) for v in self.values))

    def serialize(self) -> bytes:
        if self.trivial:
            return f"{self.kind}|trivial|{len(self.values)}".encode()
        return (self.kind + "|" + ";".join(_elt_text(v) for v in self.values)).encode()

    def __eq__(self, other) -> bool:
        if isinstance(other, CanonClass):
            return self.hkey == other.hkey
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.hkey)


def _canon_affine_values(values: Sequence[AffElt], F: Field) -> tuple[tuple, bool]:
    one = F.one
    pivot = next((v for v in values if not v.lin.is_one()), None)
    if pivot is not None:
        s = pivot.trans * (pivot.lin - one).inverse()
        if s:
            values = [AffElt(v.lin, v.trans - s * (v.lin - one)) for v in values]
    lead = next((v.trans for v in values if v.trans), None)
    if lead is None:
        return tuple(values), pivot is None
    if lead.is_one():
        return tuple(values), False
    inv = lead.inverse()
    return tuple(AffElt(v.lin, v.trans * inv) for v in values), False


def _sort_key(values: Sequence[CycloElt]) -> tuple:
    return tuple(v.sort_key() for v in values)


def split_pair(rep: Rep) -> Optional[tuple[tuple, tuple]]:
    """For a totally reducible GL2 rep, its two diagonal characters; else None."""
    F = rep.field
    aff = [AffElt(v.top * v.bottom.inverse(), v.corner * v.bottom.inverse()) for v in rep.values]
    if _common_fixed_point(aff, F) is None:
        return None
    return tuple(v.top for v in rep.values), tuple(v.bottom for v in rep.values)


def _common_fixed_point(values: Sequence[AffElt], F: Field) -> Optional[CycloElt]:
    """Some c with b = c (a - 1) for every map (a common fixed point up to sign)."""
    pivot = next((v for v in values if not v.lin.is_one()), None)
    if pivot is None:
        return F.zero if not any(v.trans for v in values) else None
    c = pivot.trans * (pivot.lin - F.one).inverse()
    for v in values:
        if v.trans != c * (v.lin - F.one):
            return None
    return c


def canonicalize(rep: Rep) -> tuple[Rep, CanonClass]:
    """A canonical conjugate of rep together with its canonical class."""
    F = rep.field
    if rep.kind == SCALAR:
        return rep, CanonClass("scalar", rep.values)
    if rep.kind == AFFINE:
        vals, trivial = _canon_affine_values(rep.values, F)
        return rep.replace(vals), CanonClass("affine", vals, trivial)
    lam = tuple(v.bottom for v in rep.values)
    aff = []
    for v in rep.values:
        ib = v.bottom.inverse()
        aff.append(AffElt(v.top * ib, v.corner * ib))
    if _common_fixed_point(aff, F) is not None:
        tops = tuple(v.top for v in rep.values)
        first, second = sorted((tops, lam), key=_sort_key)
        vals = tuple(UpperElt(x, F.zero, y) for x, y in zip(first, second))
        return rep.replace(vals), CanonClass("gl2-split", first + second)
    avals, _ = _canon_affine_values(aff, F)
    vals = tuple(UpperElt(l * a.lin, l * a.trans, l) for l, a in zip(lam, avals))
    return rep.replace(vals), CanonClass("gl2-nonsplit", lam + avals)


def canon(rep: Rep) -> CanonClass:
    return canonicalize(rep)[1]


def canon_affine(rep: Rep) -> CanonClass:
    if rep.kind != AFFINE:
        raise ValueError("canon_affine needs an affine representation")
    return canon(rep)


def canon_gl2(rep: Rep) -> CanonClass:
    if rep.kind != GL2:
        raise ValueError("canon_gl2 needs an upper-triangular representation")
    return canon(rep)


# -- conjugacy oracle ------------------------------------------------------------------


def _solve_two_unknowns(rows: list[list[CycloElt]], F: Field):
    """Solve p*x + q*y = r over F.  Returns (particular, nullspace) or None."""
    rows = [list(r) for r in rows]
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in (0, 1):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append((rank, col))
        rank += 1
    if any(rows[i][2] for i in range(rank, len(rows))):
        return None
    sol = [F.zero, F.zero]
    for r, c in pivots:
        sol[c] = rows[r][2]
    pivot_cols = {c for _, c in pivots}
    null = []
    for f in (0, 1):
        if f in pivot_cols:
            continue
        vec = [F.zero, F.zero]
        vec[f] = F.one
        for r, c in pivots:
            vec[c] = -rows[r][f]
        null.append(vec)
    return sol, null


def conjugacy_equal(r1: Rep, r2: Rep) -> Optional[AffElt]:
    """Some h = lam*z + s with h o r1(x) o h^-1 = r2(x) for all generators, else None."""
    if r1.kind != AFFINE or r2.kind != AFFINE:
        raise ValueError("conjugacy_equal compares affine representations")
    if (r1.g, r1.n, r1.field.N) != (r2.g, r2.n, r2.field.N):
        return None
    F = r1.field
    rows = []
    for u, v in zip(r1.values, r2.values):
        if u.lin != v.lin:
            return None
        rows.append([u.trans, -(u.lin - F.one), v.trans])
    solved = _solve_two_unknowns(rows, F)
    if solved is None:
        return None
    (lam, s), null = solved
    if not lam:
        for vec in null:
            if vec[0]:
                lam, s = lam + vec[0], s + vec[1]
                break
        else:
            return None
    return AffElt(lam, s)


# -- decompositions --------------------------------------------------------------------


def scalar_part(rep: Rep) -> Rep:
    if rep.kind != GL2:
        raise ValueError("scalar_part needs an upper-triangular representation")
    return Rep(SCALAR, rep.g, rep.n, rep.field, [v.bottom for v in rep.values])


def affine_part(rep: Rep) -> Rep:
    if rep.kind != GL2:
        raise ValueError("affine_part needs an upper-triangular representation")
    vals = []
    for v in rep.values:
        ib = v.bottom.inverse()
        vals.append(AffElt(v.top * ib, v.corner * ib))
    return Rep(AFFINE, rep.g, rep.n, rep.field, vals)


def tensor(lam: Rep, a: Rep) -> Rep:
    if lam.kind != SCALAR or a.kind != AFFINE:
        raise ValueError("tensor takes a scalar and an affine representation")
    if (lam.g, lam.n, lam.field.N) != (a.g, a.n, a.field.N):
        raise ValueError("tensor factors live on different surfaces or fields")
    vals = [UpperElt(l * f.lin, l * f.trans, l) for l, f in zip(lam.values, a.values)]
    return Rep(GL2, a.g, a.n, a.field, vals)


def embed_affine(a: Rep) -> Rep:
    """The affine group inside GL2 as [[a, b], [0, 1]]."""
    return tensor(Rep.trivial(SCALAR, a.g, a.n, a.field), a)


def is_totally_reducible(rep: Rep) -> bool:
    if rep.kind == SCALAR:
        return True
    if rep.kind == AFFINE:
        return _common_fixed_point(rep.values, rep.field) is not None
    return split_pair(rep) is not None


def is_abelian(rep: Rep) -> bool:
    if rep.kind == SCALAR:
        return True
    vals = rep.values
    for i, x in enumerate(vals):
        for y in vals[i + 1 :]:
            if x * y != y * x:
                return False
    return True


def _torsion_lcm(values: Iterable[CycloElt]) -> Optional[int]:
    out = 1
    for v in values:
        k = as_root_of_unity(v)
        if k is None:
            return None
        out = math.lcm(out, k)
    return out


def image_closure(rep: Rep, cap: int = 10_000) -> Optional[int]:
    """Size of the image group by closure enumeration, or None past ``cap`` elements."""
    gens = [v for v in rep.values if not _is_identity(v)]
    gens = list(dict.fromkeys(gens + [v.inverse() for v in gens]))
    e = rep.identity()
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s
                if y not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def image_order(rep: Rep, cap: int = 10_000) -> Union[int, float]:
    """Order of Im(rho); ``math.inf`` when infinite (or past ``cap`` for the general case)."""
    if rep.kind == SCALAR:
        k = _torsion_lcm(rep.values)
        return math.inf if k is None else k
    if rep.kind == AFFINE and is_abelian(rep):
        c = _common_fixed_point(rep.values, rep.field)
        if c is None:
            return math.inf  # non-trivial translation group
        k = _torsion_lcm(v.lin for v in rep.values)
        return math.inf if k is None else k
    size = image_closure(rep, cap)
    return math.inf if size is None else size


# -- families ----------------------------------------------------------------------------


def rho_mu_c(n: int, mu: CycloElt, c: Sequence, g: int = 1) -> Rep:
    """a_g -> mu z, b_g -> z - 1/(mu - 1), g_i -> z + c_i, other handles trivial."""
    F = mu.field
    cs = [F(x) for x in c]
    if len(cs) != n:
        raise ValueError(f"c must have {n} entries")
    ident = AffElt.identity(F)
    vals = [ident] * (2 * g) + [AffElt(F.one, x) for x in cs]
    vals[2 * (g - 1)] = AffElt(mu, F.zero)
    vals[2 * (g - 1) + 1] = AffElt(F.one, -(mu - F.one).inverse())
    return Rep(AFFINE, g, n, F, vals)
