"""Template representations for the classifier/orbit concordance grid."""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional

from .cyclo import Field, field
from .reps import AFFINE, SCALAR, AffElt, Rep, rho_mu_c, tensor

__all__ = ["GridCase", "grid_cases", "template"]

TEMPLATES = ("scalar", "translation", "rho_mu_c", "tensor_rho_mu_c", "prepared_g2")


class GridCase(NamedTuple):
    template: str
    g: int
    n: int
    N: int
    rep: Rep

    @property
    def label(self) -> str:
        return f"{self.template}[g={self.g},n={self.n},N={self.N}]"


def _c_vector(F: Field, n: int, total) -> list:
    share = total * F(n).inverse()
    return [share] * n


def _affine(F: Field, g: int, n: int, changes: dict[int, AffElt]) -> Rep:
    ident = AffElt.identity(F)
    vals = [changes.get(i, ident) for i in range(2 * g + n)]
    return Rep(AFFINE, g, n, F, vals)


def template(name: str, g: int, n: int, N: int) -> Optional[Rep]:
    """The named template on (g, n) over Q(zeta_N), or None where it does not exist."""
    F = field(N)
    mu = F.zeta_pow(1)
    if name == "scalar":
        vals = [F.one] * (2 * g + n)
        vals[0] = mu
        return Rep(SCALAR, g, n, F, vals)
    if name == "translation":
        return _affine(F, g, n, {2 * (g - 1): AffElt(F.one, F.one)})
    if name in ("rho_mu_c", "tensor_rho_mu_c"):
        if n == 0:
            return None
        r = rho_mu_c(n, mu, _c_vector(F, n, F.one), g=g)
        if name == "rho_mu_c":
            return r
        lam = [F.one] * (2 * g + n)
        lam[0] = -F.one
        return tensor(Rep(SCALAR, g, n, F, lam), r)
    if name == "prepared_g2":
        if g != 2:
            return None
        mu_inv = mu.inverse()
        changes = {
            0: AffElt(mu_inv, F.zero),
            1: AffElt(F.one, mu if n == 0 else F.zero),
            2: AffElt(mu, F.zero),
            3: AffElt(F.one, F.one),
        }
        for j, c in enumerate(_c_vector(F, n, F.one - mu) if n else []):
            changes[4 + j] = AffElt(F.one, c)
        return _affine(F, g, n, changes)
    raise ValueError(f"unknown template {name!r}")


def grid_cases(gs=(1, 2), ns=(0, 1, 2), Ns=(2, 3, 4)) -> Iterator[GridCase]:
    for name in TEMPLATES:
        for g in gs:
            for n in ns:
                for N in Ns:
                    rep = template(name, g, n, N)
                    if rep is not None:
                        yield GridCase(name, g, n, N, rep)
