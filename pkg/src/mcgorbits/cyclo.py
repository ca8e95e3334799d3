"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are coefficient vectors in the power basis 1, z, ..., z^(d-1) with
d = phi(N), reduced modulo the N-th cyclotomic polynomial.  Coefficients are
``gmpy2.mpq`` rationals, always in lowest terms.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from gmpy2 import mpq

__all__ = [
    "CycloElt",
    "Field",
    "as_root_of_unity",
    "cyclotomic_poly",
    "euler_phi",
    "field",
    "torsion_log",
]

Scalar = Union[int, "mpq", str]


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, low degree first; den monic
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        if c:
            quot[k - dq] = c
            for j, m in enumerate(den):
                num[k - dq + j] -= c * m
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class Field:
    """The cyclotomic field Q(zeta_N).  Obtain instances through :func:`field`."""

    __slots__ = ("N", "degree", "modulus", "_reduce_rows", "zero", "one", "_torsion")

    def __init__(self, N: int):
        if N < 1:
            raise ValueError(f"cyclotomic order must be positive, got {N}")
        self.N = N
        self.modulus = cyclotomic_poly(N)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # rows[k] = coefficients of z^(d+k) in the power basis
        rows = []
        cur = [-c for c in self.modulus[:d]]
        for _ in range(max(d - 1, 0)):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(d):
                    cur[j] -= top * self.modulus[j]
        self._reduce_rows = tuple(rows)
        self.zero = CycloElt(self, (mpq(0),) * d)
        self.one = CycloElt(self, (mpq(1),) + (mpq(0),) * (d - 1))
        self._torsion: Optional[tuple[int, dict]] = None

    def __repr__(self) -> str:
        return f"Field({self.N})"

    def __reduce__(self):
        return (field, (self.N,))

    @property
    def phi_N(self) -> int:
        return self.degree

    def __call__(self, value: Union[Scalar, "CycloElt", Sequence[Scalar]]) -> "CycloElt":
        if isinstance(value, CycloElt):
            if value.field is not self:
                raise ValueError(f"element of Q(zeta_{value.field.N}) used in Q(zeta_{self.N})")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise ValueError(
                    f"expected {self.degree} coefficients for Q(zeta_{self.N}), got {len(value)}"
                )
            return CycloElt(self, tuple(mpq(c) for c in value))
        return CycloElt(self, (mpq(value),) + (mpq(0),) * (self.degree - 1))

    def zeta_pow(self, k: int) -> "CycloElt":
        return _zeta_pow(self.N, k % self.N)

    def torsion_order(self) -> int:
        """Order of the group of roots of unity in this field: lcm(2, N)."""
        return self.N if self.N % 2 == 0 else 2 * self.N

    def torsion_generator(self) -> "CycloElt":
        if self.N % 2 == 0:
            return self.zeta_pow(1)
        return -self.zeta_pow(1)

    def _torsion_table(self) -> tuple[int, dict]:
        if self._torsion is None:
            T = self.torsion_order()
            w = self.torsion_generator()
            table = {}
            x = self.one
            for k in range(T):
                table[x.coeffs] = k
                x = x * w
            self._torsion = (T, table)
        return self._torsion

    def reduce(self, coeffs: Sequence) -> "CycloElt":
        """Reduce an arbitrary-length coefficient vector modulo Phi_N."""
        d = self.degree
        out = [mpq(c) for c in coeffs[:d]] + [mpq(0)] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = mpq(coeffs[k])
            if c:
                row = _power_row_cached(self.N, k)
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloElt(self, tuple(out))


@lru_cache(maxsize=None)
def field(N: int) -> Field:
    return Field(N)


@lru_cache(maxsize=None)
def _power_row_cached(N: int, k: int) -> tuple[int, ...]:
    F = field(N)
    d = F.degree
    if k < d:
        row = [0] * d
        row[k] = 1
        return tuple(row)
    prev = list(_power_row_cached(N, k - 1))
    top = prev[-1]
    cur = [0] + prev[:-1]
    if top:
        for j in range(d):
            cur[j] -= top * F.modulus[j]
    return tuple(cur)


@lru_cache(maxsize=None)
def _zeta_pow(N: int, k: int) -> "CycloElt":
    F = field(N)
    return CycloElt(F, tuple(mpq(c) for c in _power_row_cached(N, k)))


class CycloElt:
    """An element of Q(zeta_N), immutable and hashable."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, F: Field, coeffs: tuple):
        self.field = F
        self.coeffs = coeffs
        self._hash = None

    def __reduce__(self):
        return (_rebuild, (self.field.N, tuple(str(c) for c in self.coeffs)))

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloElt):
            return self.coeffs == other.coeffs and self.field.N == other.field.N
        if isinstance(other, int):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.N, self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_one(self) -> bool:
        c = self.coeffs
        return c[0] == 1 and not any(c[1:])

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "CycloElt":
        if isinstance(other, CycloElt):
            if other.field is not self.field and other.field.N != self.field.N:
                raise ValueError(
                    f"mixed cyclotomic orders {self.field.N} and {other.field.N}"
                )
            return other
        return self.field(other)

    def __add__(self, other) -> "CycloElt":
        o = self._coerce(other)
        return CycloElt(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "CycloElt":
        o = self._coerce(other)
        return CycloElt(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other) -> "CycloElt":
        return self._coerce(other) - self

    def __neg__(self) -> "CycloElt":
        return CycloElt(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CycloElt":
        if not isinstance(other, CycloElt):
            if isinstance(other, (int, type(mpq(0)))):
                c = mpq(other)
                return CycloElt(self.field, tuple(a * c for a in self.coeffs))
            other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        d = len(a)
        if d == 1:
            return CycloElt(self.field, (a[0] * b[0],))
        prod = [mpq(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        rows = self.field._reduce_rows
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = rows[k - d]
                for j in range(d):
                    r = row[j]
                    if r:
                        out[j] += c * r
        return CycloElt(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElt":
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        return CycloElt(self.field, _inverse_coeffs(self.field.N, self.coeffs))

    def __truediv__(self, other) -> "CycloElt":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycloElt":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycloElt":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- text / json ---------------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def sort_key(self) -> tuple:
        return tuple(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"CycloElt(N={self.field.N}, {self.to_json()})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("ζ" if k == 1 else f"ζ^{k}")
            if k and c == 1:
                terms.append(mono)
            elif k and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")


def _rebuild(N: int, coeffs: tuple[str, ...]) -> CycloElt:
    return field(N)(list(coeffs))


@lru_cache(maxsize=1 << 16)
def _inverse_coeffs(N: int, coeffs: tuple) -> tuple:
    F = field(N)
    d = F.degree
    if d == 1:
        return (1 / coeffs[0],)
    # multiplication-by-x matrix: column j = x * z^j; solve M y = e_0
    x = CycloElt(F, coeffs)
    cols = [(x * _zeta_pow(N, j)).coeffs for j in range(d)]
    rows = [[cols[j][i] for j in range(d)] + [mpq(1 if i == 0 else 0)] for i in range(d)]
    for c in range(d):
        piv = next(r for r in range(c, d) if rows[r][c])
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [v * inv for v in rows[c]]
        for r in range(d):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return tuple(rows[i][d] for i in range(d))


def torsion_log(x: CycloElt) -> Optional[int]:
    """Exponent k with x = w^k for the field's torsion generator w, or None."""
    T, table = x.field._torsion_table()
    return table.get(x.coeffs)


def as_root_of_unity(x: CycloElt) -> Optional[int]:
    """Multiplicative order of x if it is a root of unity, else None."""
    if not x:
        raise ValueError("zero is not a unit")
    k = torsion_log(x)
    if k is None:
        return None
    T = x.field.torsion_order()
    return T // gcd(T, k)


def parse_elt(F: Field, data: Union[Iterable[str], str, int]) -> CycloElt:
    """Parse the JSON encoding (an array of ``"p/q"`` strings)."""
    if isinstance(data, (str, int)):
        return F(mpq(data))
    items = list(data)
    if len(items) != F.degree:
        raise ValueError(
            f"expected {F.degree} coefficients for Q(zeta_{F.N}), got {len(items)}"
        )
    out = []
    for item in items:
        if not isinstance(item, (str, int)) or isinstance(item, bool):
            raise ValueError(f"coefficient {item!r} must be an exact string 'p/q'")
        out.append(mpq(item))
    return CycloElt(F, tuple(out))
