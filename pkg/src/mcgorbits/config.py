"""Problem configurations and JSON encodings of representations.

A configuration looks like::

    {"g": 1, "n": 1, "N": 2,
     "representation": {"kind": "affine",
                        "alpha": [{"a": ["-1"], "b": ["0"]}],
                        "beta":  [{"a": ["1"],  "b": ["1/2"]}],
                        "gamma": [{"a": ["1"],  "b": ["1"]}]},
     "options": {"cap": 1000, "group": "pure"}}

Field elements are arrays of phi(N) exact rational strings.  Instead of an
explicit representation, ``"family"`` builds rho_{mu,c} (optionally tensored
with a scalar character)::

    {"g": 1, "n": 1, "N": 2, "family": {"name": "rho_mu_c", "mu_exponent": 1, "c": [["1"]]}}
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from typing import Any

from .cyclo import CycloElt, Field, field
from .reps import AFFINE, KINDS, SCALAR, AffElt, Rep, UpperElt, rho_mu_c, tensor

__all__ = [
    "ConfigError",
    "ProblemConfig",
    "config_hash",
    "dumps",
    "elt_from_json",
    "load_config",
    "parse_config",
    "rep_from_json",
    "rep_to_json",
]


class ConfigError(ValueError):
    pass


@dataclass
class ProblemConfig:
    g: int
    n: int
    N: int
    rep: Rep
    options: dict = dc_field(default_factory=dict)


def dumps(obj: Any, compact: bool = False) -> str:
    if compact:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def config_hash(raw: Any) -> str:
    return hashlib.sha256(dumps(raw, compact=True).encode()).hexdigest()


def elt_from_json(F: Field, data: Any, where: str) -> CycloElt:
    if isinstance(data, bool) or isinstance(data, float):
        raise ConfigError(f"{where}: numbers must be exact strings, got {data!r}")
    if isinstance(data, (str, int)):
        items = [data] + ["0"] * (F.degree - 1)
    elif isinstance(data, list):
        items = data
    else:
        raise ConfigError(f"{where}: expected an array of {F.degree} rational strings")
    if len(items) != F.degree:
        raise ConfigError(
            f"{where}: {len(items)} coefficients given but Q(zeta_{F.N}) has degree {F.degree}"
            " (mixed cyclotomic orders are not supported)"
        )
    for c in items:
        if isinstance(c, bool) or not isinstance(c, (str, int)):
            raise ConfigError(f"{where}: coefficient {c!r} must be an exact string 'p/q'")
    try:
        return F(list(items))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _entry(kind: str, F: Field, data: Any, where: str):
    if kind == SCALAR:
        x = elt_from_json(F, data, where)
        if not x:
            raise ConfigError(f"{where}: scalar value must be non-zero")
        return x
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object")
    if kind == AFFINE:
        _keys(data, {"a", "b"}, where)
        a = elt_from_json(F, data["a"], where + ".a")
        if not a:
            raise ConfigError(f"{where}: linear part must be non-zero")
        return AffElt(a, elt_from_json(F, data["b"], where + ".b"))
    _keys(data, {"top", "corner", "bottom"}, where)
    top = elt_from_json(F, data["top"], where + ".top")
    bottom = elt_from_json(F, data["bottom"], where + ".bottom")
    if not top or not bottom:
        raise ConfigError(f"{where}: diagonal entries must be non-zero")
    return UpperElt(top, elt_from_json(F, data["corner"], where + ".corner"), bottom)


def _keys(data: dict, want: set, where: str) -> None:
    missing = want - set(data)
    extra = set(data) - want
    if missing:
        raise ConfigError(f"{where}: missing {sorted(missing)}")
    if extra:
        raise ConfigError(f"{where}: unexpected {sorted(extra)}")


def rep_from_json(data: dict, g: int, n: int, F: Field) -> Rep:
    if not isinstance(data, dict):
        raise ConfigError("representation must be an object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"representation.kind must be one of {list(KINDS)}, got {kind!r}")
    lists = {}
    for name, count in (("alpha", g), ("beta", g), ("gamma", n)):
        items = data.get(name, [])
        if not isinstance(items, list) or len(items) != count:
            raise ConfigError(f"representation.{name} must list {count} entries")
        short = {"alpha": "a", "beta": "b", "gamma": "g"}[name]
        lists[name] = [_entry(kind, F, x, f"{short}{i + 1}") for i, x in enumerate(items)]
    return Rep.from_lists(kind, F, lists["alpha"], lists["beta"], lists["gamma"])


def _elt_json(x: CycloElt) -> list[str]:
    return x.to_json()


def rep_to_json(rep: Rep) -> dict:
    def enc(v):
        if rep.kind == SCALAR:
            return _elt_json(v)
        if rep.kind == AFFINE:
            return {"a": _elt_json(v.lin), "b": _elt_json(v.trans)}
        return {"top": _elt_json(v.top), "corner": _elt_json(v.corner), "bottom": _elt_json(v.bottom)}

    return {
        "kind": rep.kind,
        "alpha": [enc(v) for v in rep.alphas],
        "beta": [enc(v) for v in rep.betas],
        "gamma": [enc(v) for v in rep.gammas],
    }


def _family(data: dict, g: int, n: int, F: Field) -> Rep:
    if not isinstance(data, dict) or data.get("name") != "rho_mu_c":
        raise ConfigError("family.name must be 'rho_mu_c'")
    k = data.get("mu_exponent", 1)
    if not isinstance(k, int) or isinstance(k, bool):
        raise ConfigError("family.mu_exponent must be an integer")
    mu = F.zeta_pow(k)
    if mu.is_one():
        raise ConfigError("family: mu must differ from 1")
    cs = data.get("c")
    if not isinstance(cs, list) or len(cs) != n:
        raise ConfigError(f"family.c must list {n} entries")
    c = [elt_from_json(F, x, f"c{i + 1}") for i, x in enumerate(cs)]
    rep = rho_mu_c(n, mu, c, g=g)
    lam = data.get("lambda")
    if lam is None:
        return rep
    lam_rep = rep_from_json({"kind": SCALAR, **lam}, g, n, F)
    return tensor(lam_rep, rep)


def parse_config(raw: Any) -> ProblemConfig:
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    try:
        g, n, N = raw["g"], raw["n"], raw["N"]
    except KeyError as exc:
        raise ConfigError(f"configuration lacks {exc.args[0]!r}") from None
    for name, v, lo in (("g", g, 1), ("n", n, 0), ("N", N, 1)):
        if not isinstance(v, int) or isinstance(v, bool) or v < lo:
            raise ConfigError(f"{name} must be an integer >= {lo}, got {v!r}")
    F = field(N)
    has_rep, has_fam = "representation" in raw, "family" in raw
    if has_rep == has_fam:
        raise ConfigError("give exactly one of 'representation' and 'family'")
    if has_rep:
        rep_data = raw["representation"]
        if isinstance(rep_data, dict) and "N" in rep_data and rep_data["N"] != N:
            raise ConfigError(f"mixed cyclotomic orders {rep_data['N']} and {N}")
        if isinstance(rep_data, dict):
            rep_data = {k: v for k, v in rep_data.items() if k != "N"}
        rep = rep_from_json(rep_data, g, n, F)
    else:
        rep = _family(raw["family"], g, n, F)
    options = raw.get("options", {})
    if not isinstance(options, dict):
        raise ConfigError("options must be an object")
    return ProblemConfig(g, n, N, rep, dict(options))


def load_config(path: str) -> tuple[Any, ProblemConfig]:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from None
    return raw, parse_config(raw)
