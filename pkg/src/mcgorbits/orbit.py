"""Breadth-first enumeration of mapping class group orbits of conjugacy classes.

States are canonical classes (full group) or pairs (class, puncture
permutation) (pure group).  Levels are expanded in a fixed order, so the
result does not depend on the number of worker processes.
"""

from __future__ import annotations

import gc
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .cyclo import field
from .kernel import Kernel, TorsionKernel, make_kernel
from .mcg import GenName, all_generators, auto_of, format_mcg_word
from .reps import CanonClass, Rep, act, canonicalize, validate

__all__ = ["DEFAULT_CAP", "OrbitResult", "generator_set", "orbit", "suborbit_probe"]

DEFAULT_CAP = 100_000
FULL, PURE = "full", "pure"


@dataclass
class OrbitResult:
    status: str  # "finite" or "cap_exceeded"
    size: int
    group: str
    cap: int
    generators_used: list[str]
    full_size: int
    pure_size: Optional[int] = None
    states: int = 0
    witness: Optional[dict] = None
    classes: list[CanonClass] = dc_field(default_factory=list, repr=False)

    @property
    def finite(self) -> bool:
        return self.status == "finite"

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "orbit_size": self.size,
            "group": self.group,
            "cap": self.cap,
            "full_size": self.full_size,
            "pure_size": self.pure_size,
            "states": self.states,
            "generators_used": self.generators_used,
            "witness": self.witness,
        }
        return out


def generator_set(g: int, n: int) -> list[GenName]:
    """Every generator followed by its inverse, in a fixed order."""
    out = []
    for gen in all_generators(g, n):
        out.append(gen)
        out.append(gen.inverse())
    return out


def _compose_perm(a: tuple, b: tuple) -> tuple:
    return tuple(a[p - 1] for p in b)


_KERNELS: dict = {}


def _kernel(kind: str, g: int, n: int, N: int, torsion: bool = False) -> Kernel:
    key = (kind, g, n, N, torsion)
    k = _KERNELS.get(key)
    if k is None:
        k = _KERNELS[key] = make_kernel(kind, g, n, field(N), torsion)
    return k


def _expand(args) -> list:
    """Canonical neighbours of each raw state; the edge back to its parent is skipped (None)."""
    kkey, frontier, gens = args
    k = _kernel(*kkey)
    act, canon = k.act, k.canon
    out = []
    for raw, back in frontier:
        out.append([None if i == back else canon(act(gen, raw)) for i, gen in enumerate(gens)])
    return out


def _neighbours(kkey, frontier: Sequence, gens, pool, jobs: int) -> list:
    if pool is None or len(frontier) < 64:
        return _expand((kkey, frontier, gens))
    size = -(-len(frontier) // (jobs * 4))
    chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
    out: list = []
    for part in pool.map(_expand, [(kkey, c, gens) for c in chunks]):
        out.extend(part)
    return out


def _path(parents: dict, key) -> list[GenName]:
    word = []
    while parents[key] is not None:
        key, gen = parents[key]
        word.append(gen)
    return word[::-1]


def orbit(
    rep: Rep,
    group: str = FULL,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    keep_classes: bool = False,
    probe: int = 100,
) -> OrbitResult:
    """Orbit of the class of ``rep``; ``cap`` bounds the number of BFS states."""
    if group not in (FULL, PURE):
        raise ValueError(f"group must be 'full' or 'pure', got {group!r}")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not validate(rep):
        raise ValueError("representation does not satisfy the surface relation")
    g, n = rep.g, rep.n
    gens = generator_set(g, n)
    perms = [auto_of(x, g, n).perm for x in gens]
    ident = tuple(range(1, n + 1))
    pure = group == PURE

    kkey = (rep.kind, g, n, rep.field.N, TorsionKernel.applies(rep))
    kern = _kernel(*kkey)
    start = kern.canon(kern.from_rep(rep))
    k0 = (start, ident) if pure else start
    parents: dict = {k0: None}
    # in the full group the parent keys are the classes themselves
    classes: dict = {start: None} if pure else parents
    frontier = [(start, ident, k0, -1)]
    exceeded = False
    # frontier blocks are merged in order, so the result does not depend on jobs
    block = 256 * max(1, jobs)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    # the state tables hold only tuples of ints; cyclic collection just adds pauses
    gc_was_on = gc.isenabled()
    gc.disable()
    try:
        while frontier and not exceeded:
            nxt = []
            for lo in range(0, len(frontier), block):
                chunk = frontier[lo : lo + block]
                rows = _neighbours(kkey, [(r, back) for r, _, _, back in chunk], gens, pool, jobs)
                for (_, perm, key, _), row in zip(chunk, rows):
                    for i, (gen, gperm, r2) in enumerate(zip(gens, perms, row)):
                        if r2 is None:
                            continue
                        if pure:
                            p2 = _compose_perm(gperm, perm)
                            k2 = (r2, p2)
                        else:
                            p2, k2 = ident, r2
                        if k2 in parents:
                            continue
                        if len(parents) >= cap:
                            exceeded = True
                            break
                        parents[k2] = (key, gen)
                        if pure:
                            classes[r2] = None
                        nxt.append((r2, p2, k2, i ^ 1))
                    if exceeded:
                        break
                if exceeded:
                    break
            frontier = nxt
    finally:
        if gc_was_on:
            gc.enable()
        if pool is not None:
            pool.shutdown()

    if pure:
        pure_keys = [c for c, p in parents if p == ident]
        size, pure_size = len(pure_keys), len(pure_keys)
    else:
        size, pure_size = len(classes), None
    result = OrbitResult(
        status="cap_exceeded" if exceeded else "finite",
        size=size,
        group=group,
        cap=cap,
        generators_used=[str(x) for x in gens],
        full_size=len(classes),
        pure_size=pure_size,
        states=len(parents),
    )
    if keep_classes:
        result.classes = [kern.canon_class(raw) for raw in classes]
    if exceeded:
        result.witness = _witness(rep, gens, parents, probe)
    return result


def _witness(rep: Rep, gens, parents: dict, probe: int) -> dict:
    for gen in gens:
        if suborbit_probe(rep, gen, probe):
            _, c0 = canonicalize(rep)
            _, c1 = canonicalize(act(gen, rep))
            return {
                "kind": "suborbit",
                "word": str(gen),
                "iterates": probe,
                "classes": [c0.serialize().decode(), c1.serialize().decode()],
            }
    last = next(reversed(parents))
    word = _path(parents, last)
    r = rep
    for gen in word:
        r = act(gen, r)
    return {
        "kind": "bfs_depth",
        "word": format_mcg_word(word),
        "classes": [canonicalize(rep)[1].serialize().decode(), canonicalize(r)[1].serialize().decode()],
    }


def suborbit_probe(rep: Rep, gen: GenName, count: int) -> bool:
    """True iff rep, gen.rep, ..., gen^(count-1).rep lie in pairwise distinct classes."""
    seen = set()
    r = rep
    for i in range(count):
        r, cls = canonicalize(r)
        if cls.hkey in seen:
            return False
        seen.add(cls.hkey)
        if i + 1 < count:
            r = act(gen, r)
    return True
