"""Tuple-level arithmetic used by the orbit search.

A field element is the integer tuple (den, n_0, ..., n_{d-1}) standing for
(n_0 + n_1 z + ... + n_{d-1} z^{d-1}) / den, with den > 0 and the gcd of
all entries equal to 1.  This form is canonical, and hashing or comparing
small Python ints is far cheaper than doing the same with rationals.

Affine maps are pairs (lin, trans) and an upper-triangular matrix
[[l*a, l*b], [0, l]] is the triple (l, a, b).  :class:`TorsionKernel`
further replaces every root of unity w^k by its exponent k.

The object-level code in ``reps`` stays the reference implementation;
``canon_class`` converts back to it.
"""

from __future__ import annotations

from math import gcd, lcm

from gmpy2 import mpq

from .cyclo import CycloElt, Field, _inverse_coeffs, torsion_log
from .mcg import GenName, auto_blocks
from .reps import AFFINE, SCALAR, AffElt, CanonClass, Rep, UpperElt, canon
from .surface import generator_index

__all__ = ["Kernel", "TorsionKernel", "make_kernel"]


def _normal(t: list) -> tuple:
    """Normalise [den, n_0, ...] to lowest terms with a positive denominator."""
    g = gcd(*t)
    if t[0] < 0:
        g = -g
    if g != 1:
        return tuple(x // g for x in t)
    return tuple(t)


def encode(coeffs) -> tuple:
    den = lcm(*(int(mpq(c).denominator) for c in coeffs))
    return _normal([den] + [int(mpq(c) * den) for c in coeffs])


def decode(x: tuple) -> tuple:
    den = x[0]
    return tuple(mpq(n, den) for n in x[1:])


def _field_ops(F: Field) -> dict:
    """mul, inv, add, sub, neg on encoded elements, specialised to the degree."""
    d, N = F.degree, F.N
    if d == 1:

        def mul(x, y):
            a, b = x[1] * y[1], x[0] * y[0]
            g = gcd(a, b)
            return (b // g, a // g) if g != 1 else (b, a)

        def inv(x):
            n = x[1]
            return (-n, -x[0]) if n < 0 else (n, x[0])

        def add(x, y):
            if x[0] == y[0]:
                return _normal([x[0], x[1] + y[1]])
            return _normal([x[0] * y[0], x[1] * y[0] + y[1] * x[0]])

        def sub(x, y):
            if x[0] == y[0]:
                return _normal([x[0], x[1] - y[1]])
            return _normal([x[0] * y[0], x[1] * y[0] - y[1] * x[0]])

        return {"mul": mul, "inv": inv, "add": add, "sub": sub, "neg": lambda x: (x[0], -x[1])}

    rows = tuple(tuple(int(c) for c in r) for r in F._reduce_rows)

    if d == 2:
        r0, r1 = rows[0]  # z^2 = r0 + r1 z

        def mul(x, y):
            x0, x1 = x[1], x[2]
            y0, y1 = y[1], y[2]
            p2 = x1 * y1
            return _normal([x[0] * y[0], x0 * y0 + r0 * p2, x0 * y1 + x1 * y0 + r1 * p2])

        def inv(x):
            # (x0 + x1 z)(x0 + x1 r1 - x1 z) = x0^2 + r1 x0 x1 - r0 x1^2
            D, x0, x1 = x
            norm = x0 * x0 + r1 * x0 * x1 - r0 * x1 * x1
            return _normal([norm, D * (x0 + x1 * r1), -D * x1])

        def add(x, y):
            if x[0] == y[0]:
                return _normal([x[0], x[1] + y[1], x[2] + y[2]])
            a, b = x[0], y[0]
            return _normal([a * b, x[1] * b + y[1] * a, x[2] * b + y[2] * a])

        def sub(x, y):
            if x[0] == y[0]:
                return _normal([x[0], x[1] - y[1], x[2] - y[2]])
            a, b = x[0], y[0]
            return _normal([a * b, x[1] * b - y[1] * a, x[2] * b - y[2] * a])

        return {"mul": mul, "inv": inv, "add": add, "sub": sub, "neg": lambda x: (x[0], -x[1], -x[2])}

    def mul(x, y):
        prod = [0] * (2 * d - 1)
        for i in range(d):
            a = x[i + 1]
            if a:
                for j in range(d):
                    b = y[j + 1]
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for j, r in enumerate(rows[k - d]):
                    if r:
                        out[j] += c * r
        return _normal([x[0] * y[0]] + out)

    def inv(x):
        return encode(_inverse_coeffs(N, decode(x)))

    def add(x, y):
        a, b = x[0], y[0]
        return _normal([a * b] + [p * b + q * a for p, q in zip(x[1:], y[1:])])

    def sub(x, y):
        a, b = x[0], y[0]
        return _normal([a * b] + [p * b - q * a for p, q in zip(x[1:], y[1:])])

    def neg(x):
        return (x[0],) + tuple(-p for p in x[1:])

    return {"mul": mul, "inv": inv, "add": add, "sub": sub, "neg": neg}


class Kernel:
    """Action and canonical form for one (kind, g, n, field)."""

    def __init__(self, kind: str, g: int, n: int, F: Field):
        self.kind, self.g, self.n, self.field = kind, g, n, F
        ops = _field_ops(F)
        self.mul, self.inv, self.add, self.sub, self.neg = (
            ops["mul"], ops["inv"], ops["add"], ops["sub"], ops["neg"]
        )
        d = F.degree
        self.zero = (1,) + (0,) * d
        self.one = (1, 1) + (0,) * (d - 1)
        if kind == SCALAR:
            self.gmul, self.ginv, self.gid = self.mul, self.inv, self.one
        elif kind == AFFINE:
            self.gmul, self.ginv, self.gid = self._aff_mul, self._aff_inv, (self.one, self.zero)
        else:
            self.gmul, self.ginv = self._fac_mul, self._fac_inv
            self.gid = (self.one, self.one, self.zero)
        self._plans: dict = {}

    # -- group laws --------------------------------------------------------------

    def _aff_mul(self, f, h):
        mul = self.mul
        return (mul(f[0], h[0]), self.add(mul(f[0], h[1]), f[1]))

    def _aff_inv(self, f):
        ia = self.inv(f[0])
        return (ia, self.neg(self.mul(ia, f[1])))

    # upper-triangular matrices are stored factored as (lam, a, b) = lam * (a z + b)

    def _fac_mul(self, x, y):
        mul = self.mul
        return (mul(x[0], y[0]), mul(x[1], y[1]), self.add(mul(x[1], y[2]), x[2]))

    def _fac_inv(self, x):
        ia = self.inv(x[1])
        return (self.inv(x[0]), ia, self.neg(self.mul(ia, x[2])))

    # -- conversion ----------------------------------------------------------------

    def from_rep(self, rep: Rep) -> tuple:
        if self.kind == SCALAR:
            return tuple(encode(v.coeffs) for v in rep.values)
        if self.kind == AFFINE:
            return tuple((encode(v.lin.coeffs), encode(v.trans.coeffs)) for v in rep.values)
        out = []
        for v in rep.values:
            ib = v.bottom.inverse()
            out.append((encode(v.bottom.coeffs), encode((v.top * ib).coeffs), encode((v.corner * ib).coeffs)))
        return tuple(out)

    def elt(self, x: tuple) -> CycloElt:
        return CycloElt(self.field, decode(x))

    def to_rep(self, raw: tuple) -> Rep:
        e = self.elt
        if self.kind == SCALAR:
            vals = [e(v) for v in raw]
        elif self.kind == AFFINE:
            vals = [AffElt(e(a), e(b)) for a, b in raw]
        else:
            vals = []
            for lam, a, b in raw:
                lam = e(lam)
                vals.append(UpperElt(lam * e(a), lam * e(b), lam))
        return Rep(self.kind, self.g, self.n, self.field, vals)

    # -- action --------------------------------------------------------------------

    def _plan(self, gen: GenName):
        """Straight-line code for gen . rho, evaluated through gen^-1's block images."""
        g = self.g
        blocks, images = auto_blocks(gen.inverse(), g, self.n)
        lines, invs = [], set()

        def letter(x) -> str:
            i = generator_index(x, g)
            if x.sign == 1:
                return f"r[{i}]"
            invs.add(i)
            return f"i{i}"

        def product(terms: list[str]) -> str:
            if not terms:
                return "gid"
            out = terms[0]
            for t in terms[1:]:
                out = f"mul({out}, {t})"
            return out

        for j, w in enumerate(blocks):
            lines.append(f"    B{j} = {product([letter(x) for x in w.letters])}")
        new = [f"r[{i}]" for i in range(2 * g + self.n)]
        for x, items in images.items():
            terms = [f"B{it}" if isinstance(it, int) else letter(it) for it in items]
            new[generator_index(x, g)] = product(terms)
        head = [f"    i{i} = inv(r[{i}])" for i in sorted(invs)]
        src = "def act(r):\n" + "\n".join(head + lines) + f"\n    return ({', '.join(new)},)\n"
        ns = {"mul": self.gmul, "inv": self.ginv, "gid": self.gid}
        exec(compile(src, f"<act {gen}>", "exec"), ns)
        return ns["act"]

    def act(self, gen: GenName, raw: tuple) -> tuple:
        fn = self._plans.get(gen)
        if fn is None:
            fn = self._plans[gen] = self._plan(gen)
        return fn(raw)

    # -- canonical forms -------------------------------------------------------------

    def canon(self, raw: tuple) -> tuple:
        """Canonical conjugate; the returned tuple doubles as the hash key."""
        if self.kind == SCALAR:
            return raw
        if self.kind == AFFINE:
            return self._canon_affine(raw)
        return self._canon_gl2(raw)

    def _canon_affine(self, raw: tuple) -> tuple:
        one, zero, mul, sub = self.one, self.zero, self.mul, self.sub
        pivot = None
        for v in raw:
            if v[0] != one:
                pivot = v
                break
        if pivot is not None and pivot[1] != zero:
            s = mul(pivot[1], self.inv(sub(pivot[0], one)))
            raw = tuple((a, b if a == one else sub(b, mul(s, sub(a, one)))) for a, b in raw)
        lead = None
        for v in raw:
            if v[1] != zero:
                lead = v[1]
                break
        if lead is None or lead == one:
            return raw
        y = self.inv(lead)
        return tuple((a, mul(b, y)) for a, b in raw)

    def _fixed_point(self, aff: tuple):
        one, mul, sub = self.one, self.mul, self.sub
        pivot = None
        for v in aff:
            if v[0] != one:
                pivot = v
                break
        if pivot is None:
            zero = self.zero
            return zero if all(b == zero for _, b in aff) else None
        c = mul(pivot[1], self.inv(sub(pivot[0], one)))
        for a, b in aff:
            if b != mul(c, sub(a, one)):
                return None
        return c

    def _canon_gl2(self, raw: tuple) -> tuple:
        aff = tuple((a, b) for _, a, b in raw)
        lam = tuple(v[0] for v in raw)
        if self._fixed_point(aff) is not None:
            mul = self.mul
            tops = tuple(mul(l, a) for l, (a, _) in zip(lam, aff))
            first, second = sorted((tops, lam))
            zero, inv = self.zero, self.inv
            return tuple((y, mul(x, inv(y)), zero) for x, y in zip(first, second))
        avals = self._canon_affine(aff)
        return tuple((l, a, b) for l, (a, b) in zip(lam, avals))

    def canon_class(self, raw: tuple) -> CanonClass:
        """The CanonClass of a raw representation (through the reference code)."""
        return canon(self.to_rep(raw))


def _rotation(F: Field, k: int):
    """Multiplication by w^k (w the torsion generator) as generated add/negate code.

    w^k is a unit of Z[zeta], so the map is unimodular on numerators and the
    encoded result needs no renormalisation.
    """
    w = F.torsion_generator() ** k
    d = F.degree
    cols = [(w * F.zeta_pow(j)).coeffs for j in range(d)]
    if all(cols[j] == F.zeta_pow(j).coeffs for j in range(d)):
        return lambda x: x
    out = ["x[0]"]
    for i in range(d):
        terms = []
        for j in range(d):
            m = int(cols[j][i])
            if m == 1:
                terms.append(f"+x[{j + 1}]")
            elif m == -1:
                terms.append(f"-x[{j + 1}]")
            elif m:
                terms.append(f"+({m})*x[{j + 1}]")
        out.append("".join(terms).lstrip("+") if terms else "0")
    return eval(f"lambda x: ({', '.join(out)},)")


class TorsionKernel(Kernel):
    """Kernel for classes whose linear parts are all roots of unity.

    A root of unity w^k is stored as the integer k mod T, so multiplying
    linear parts is integer addition and w^k * b is a fixed linear map.
    Affine elements are (k, b); upper-triangular ones are (l, k, b) for
    w^l * (w^k z + b); scalar ones are bare exponents.
    """

    def __init__(self, kind: str, g: int, n: int, F: Field):
        super().__init__(kind, g, n, F)
        T = self.T = F.torsion_order()
        self.rot = tuple(_rotation(F, k) for k in range(T))
        w = F.torsion_generator()
        # 1 / (w^k - 1) for k != 0
        self.cinv = (None,) + tuple(encode(((w ** k) - F.one).inverse().coeffs) for k in range(1, T))
        self._pow = tuple(w ** k for k in range(T))
        if kind == SCALAR:
            self.gmul = lambda a, b: (a + b) % T
            self.ginv = lambda a: -a % T
            self.gid = 0
        elif kind == AFFINE:
            self.gmul, self.ginv, self.gid = self._taff_mul, self._taff_inv, (0, self.zero)
        else:
            self.gmul, self.ginv, self.gid = self._tfac_mul, self._tfac_inv, (0, 0, self.zero)

    @staticmethod
    def applies(rep: Rep) -> bool:
        if rep.kind == SCALAR:
            return all(torsion_log(v) is not None for v in rep.values)
        if rep.kind == AFFINE:
            return all(torsion_log(v.lin) is not None for v in rep.values)
        return all(
            torsion_log(v.bottom) is not None and torsion_log(v.top) is not None for v in rep.values
        )

    def _taff_mul(self, f, h):
        k = f[0]
        return ((k + h[0]) % self.T, self.add(self.rot[k](h[1]), f[1]))

    def _taff_inv(self, f):
        k = -f[0] % self.T
        return (k, self.neg(self.rot[k](f[1])))

    def _tfac_mul(self, x, y):
        T, k = self.T, x[1]
        return ((x[0] + y[0]) % T, (k + y[1]) % T, self.add(self.rot[k](y[2]), x[2]))

    def _tfac_inv(self, x):
        T = self.T
        k = -x[1] % T
        return (-x[0] % T, k, self.neg(self.rot[k](x[2])))

    def from_rep(self, rep: Rep) -> tuple:
        if self.kind == SCALAR:
            return tuple(torsion_log(v) for v in rep.values)
        if self.kind == AFFINE:
            return tuple((torsion_log(v.lin), encode(v.trans.coeffs)) for v in rep.values)
        T, out = self.T, []
        for v in rep.values:
            l, t = torsion_log(v.bottom), torsion_log(v.top)
            out.append((l, (t - l) % T, encode((v.corner * v.bottom.inverse()).coeffs)))
        return tuple(out)

    def to_rep(self, raw: tuple) -> Rep:
        P, e = self._pow, self.elt
        if self.kind == SCALAR:
            vals = [P[k] for k in raw]
        elif self.kind == AFFINE:
            vals = [AffElt(P[k], e(b)) for k, b in raw]
        else:
            vals = [UpperElt(P[l] * P[k], P[l] * e(b), P[l]) for l, k, b in raw]
        return Rep(self.kind, self.g, self.n, self.field, vals)

    def _canon_affine(self, raw: tuple) -> tuple:
        mul, sub, add, rot, zero = self.mul, self.sub, self.add, self.rot, self.zero
        pivot = None
        for v in raw:
            if v[0]:
                pivot = v
                break
        if pivot is not None and pivot[1] != zero:
            s = mul(pivot[1], self.cinv[pivot[0]])
            # b - s (w^k - 1) = b + s - w^k s
            raw = tuple((k, sub(add(b, s), rot[k](s)) if k else b) for k, b in raw)
        lead = None
        for v in raw:
            if v[1] != zero:
                lead = v[1]
                break
        if lead is None or lead == self.one:
            return raw
        y = self.inv(lead)
        return tuple((k, mul(b, y)) for k, b in raw)

    def _fixed_point(self, aff: tuple):
        zero = self.zero
        pivot = None
        for v in aff:
            if v[0]:
                pivot = v
                break
        if pivot is None:
            return zero if all(b == zero for _, b in aff) else None
        c = self.mul(pivot[1], self.cinv[pivot[0]])
        sub, rot = self.sub, self.rot
        for k, b in aff:
            if b != sub(rot[k](c), c):
                return None
        return c

    def _canon_gl2(self, raw: tuple) -> tuple:
        aff = tuple((k, b) for _, k, b in raw)
        if self._fixed_point(aff) is not None:
            T = self.T
            tops = tuple((l + k) % T for l, k, _ in raw)
            lam = tuple(v[0] for v in raw)
            first, second = sorted((tops, lam))
            zero = self.zero
            return tuple((y, (x - y) % T, zero) for x, y in zip(first, second))
        avals = self._canon_affine(aff)
        return tuple((v[0], k, b) for v, (k, b) in zip(raw, avals))


def make_kernel(kind: str, g: int, n: int, F: Field, torsion: bool) -> Kernel:
    return (TorsionKernel if torsion else Kernel)(kind, g, n, F)
