"""Command-line front end: JSON configuration in, JSON report out.

Exit codes: 0 success, 1 self-test failure, 2 invalid input or failed
validation, 3 cap or search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Optional

from . import __version__
from .classify import (
    PrepareError,
    bounds_B1,
    bounds_B2,
    bounds_scalar,
    classify,
    expected_affine_count,
)
from .config import ConfigError, config_hash, dumps, load_config, parse_config, rep_to_json
from .mcg import format_mcg_word, parse_mcg_word
from .orbit import DEFAULT_CAP, orbit
from .reps import act_word, canonicalize, is_abelian, is_totally_reducible, relator_value, validate
from .selftest import run_all

EXIT_OK, EXIT_SELFTEST, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3

__all__ = ["build_parser", "main", "run"]


class CommandError(Exception):
    def __init__(self, code: int, message: str, report: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.report = report or {}


def _elt_json(x) -> Any:
    if hasattr(x, "to_json"):
        return x.to_json()
    if hasattr(x, "lin"):
        return {"a": x.lin.to_json(), "b": x.trans.to_json()}
    return {"top": x.top.to_json(), "corner": x.corner.to_json(), "bottom": x.bottom.to_json()}


def _require_valid(cfg) -> None:
    if not validate(cfg.rep):
        raise CommandError(
            EXIT_INVALID,
            "representation does not satisfy the surface relation",
            {"valid": False, "defect": _elt_json(relator_value(cfg.rep))},
        )


def _opt(args: argparse.Namespace, cfg, name: str, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return cfg.options.get(name, default) if cfg is not None else default


def cmd_validate(args, cfg) -> dict:
    rep = cfg.rep
    ok = validate(rep)
    report = {
        "valid": ok,
        "kind": rep.kind,
        "g": rep.g,
        "n": rep.n,
        "N": rep.field.N,
        "abelian": is_abelian(rep),
        "totally_reducible": is_totally_reducible(rep),
    }
    if not ok:
        report["defect"] = _elt_json(relator_value(rep))
        raise CommandError(EXIT_INVALID, "representation does not satisfy the surface relation", report)
    return report


def cmd_act(args, cfg) -> dict:
    _require_valid(cfg)
    text = _opt(args, cfg, "word", None)
    if text is None:
        raise CommandError(EXIT_INVALID, "act needs --word")
    try:
        word = parse_mcg_word(text, cfg.g, cfg.n)
    except ValueError as exc:
        raise CommandError(EXIT_INVALID, str(exc)) from None
    new = act_word(word, cfg.rep)
    _, cls = canonicalize(new)
    return {
        "word": format_mcg_word(word),
        "representation": rep_to_json(new),
        "canonical_class": cls.serialize().decode(),
    }


def cmd_orbit(args, cfg) -> dict:
    _require_valid(cfg)
    group = _opt(args, cfg, "group", "full")
    cap = _opt(args, cfg, "cap", DEFAULT_CAP)
    if group not in ("full", "pure"):
        raise CommandError(EXIT_INVALID, f"group must be 'full' or 'pure', got {group!r}")
    if not isinstance(cap, int) or cap < 1:
        raise CommandError(EXIT_INVALID, f"cap must be a positive integer, got {cap!r}")
    res = orbit(cfg.rep, group=group, cap=cap, jobs=args.jobs or 1)
    report = res.to_json()
    if not res.finite:
        raise CommandError(EXIT_CAP, f"orbit exceeds cap {cap}", report)
    return report


def cmd_classify(args, cfg) -> dict:
    _require_valid(cfg)
    cap = _opt(args, cfg, "search_cap", 10_000)
    try:
        return classify(cfg.rep, search_cap=cap).to_json()
    except PrepareError as exc:
        raise CommandError(EXIT_CAP, str(exc)) from None


def _formula_bounds(args) -> dict:
    f, p = args.formula, args
    try:
        if f == "scalar":
            lo, hi = bounds_scalar(p.N, p.g)
        elif f == "B1":
            lo, hi = bounds_B1(p.N1, p.N2, p.Nrho, p.g)
        elif f == "B2":
            lo, hi = bounds_B2(p.N, p.n_prime, p.N2)
        else:
            size = expected_affine_count(p.N, p.n_prime)
            return {"formula": f, "expected_size": size}
    except TypeError:
        raise CommandError(EXIT_INVALID, f"formula {f} is missing a parameter") from None
    except ValueError as exc:
        raise CommandError(EXIT_INVALID, str(exc)) from None
    return {"formula": f, "bounds": [lo, hi]}


def cmd_bounds(args, cfg) -> dict:
    if args.formula:
        return _formula_bounds(args)
    if cfg is None:
        raise CommandError(EXIT_INVALID, "bounds needs a configuration or --formula")
    out = cmd_classify(args, cfg)
    return {k: out[k] for k in ("verdict", "reason", "bounds", "expected_size")}


def cmd_selftest(args, cfg) -> dict:
    checks = run_all(seed=args.seed)
    failed = [c for c in checks if not c.ok]
    report = {
        "checks": len(checks),
        "failed": [{"name": c.name, "detail": c.detail} for c in failed],
        "ok": not failed,
    }
    if failed:
        raise CommandError(EXIT_SELFTEST, f"{len(failed)} self-test checks failed", report)
    return report


COMMANDS = {
    "validate": cmd_validate,
    "act": cmd_act,
    "orbit": cmd_orbit,
    "classify": cmd_classify,
    "bounds": cmd_bounds,
    "selftest": cmd_selftest,
}
NEEDS_CONFIG = {"validate", "act", "orbit", "classify"}


def run(args: argparse.Namespace, raw: Any = None) -> tuple[int, dict]:
    """Run one command; ``raw`` overrides the configuration file (sweep mode)."""
    report: dict = {"command": args.command}
    cfg = None
    try:
        if raw is None and getattr(args, "config", None):
            raw, cfg = load_config(args.config)
        elif raw is not None:
            cfg = parse_config(raw)
        if cfg is None and args.command in NEEDS_CONFIG:
            raise CommandError(EXIT_INVALID, f"{args.command} needs a configuration file")
        report.update(COMMANDS[args.command](args, cfg))
        code = EXIT_OK
    except ConfigError as exc:
        code = EXIT_INVALID
        report["error"] = str(exc)
    except OSError as exc:
        code = EXIT_INVALID
        report["error"] = f"cannot read configuration: {exc.strerror or exc}"
    except CommandError as exc:
        code = exc.code
        report.update(exc.report)
        report["error"] = str(exc)
    report["exit_code"] = code
    if raw is not None:
        report["input_hash"] = config_hash(raw)
    return code, report


# -- sweep mode ----------------------------------------------------------------------


def _sweep_key(args: argparse.Namespace, raw: Any) -> str:
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "seed_sweep", "sweep_jobs", "config")}
    return config_hash({"input": raw, "args": opts})


def _sweep_one(item) -> str:
    args, raw = item
    _, report = run(args, raw)
    report["sweep_key"] = _sweep_key(args, raw)
    return dumps(report, compact=True)


def _read_done(path: Optional[str]) -> set:
    done: set = set()
    if not path or not os.path.exists(path):
        return done
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                done.add(json.loads(line)["sweep_key"])
            except (json.JSONDecodeError, KeyError, TypeError):
                continue  # a truncated trailing line is recomputed
    return done


def run_sweep(args: argparse.Namespace) -> int:
    todo = []
    with open(args.seed_sweep, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                print(f"{args.seed_sweep}:{lineno}: malformed JSON: {exc}", file=sys.stderr)
                return EXIT_INVALID
            todo.append(raw)
    done = _read_done(args.out)
    items = [(args, raw) for raw in todo if _sweep_key(args, raw) not in done]
    out = open(args.out, "a", encoding="utf-8") if args.out else sys.stdout
    try:
        if args.sweep_jobs > 1 and len(items) > 1:
            with ProcessPoolExecutor(args.sweep_jobs) as pool:
                lines = pool.map(_sweep_one, items)
                for line in lines:
                    out.write(line + "\n")
                    out.flush()
        else:
            for item in items:
                out.write(_sweep_one(item) + "\n")
                out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"sweep: {len(todo)} inputs, {len(todo) - len(items)} already done, {len(items)} computed",
          file=sys.stderr)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mcgorbits",
        description="Mapping class group orbits of rank-one and reducible rank-two representations.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--out", help="write the report here instead of stdout (appended in sweep mode)")
    p.add_argument("--seed-sweep", metavar="FILE",
                   help="run the command on every configuration of a JSON-lines file")
    p.add_argument("--sweep-jobs", type=int, default=1, help="worker processes for sweep mode")
    sub = p.add_subparsers(dest="command", required=True)

    def with_config(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("config", nargs="?", help="configuration JSON file (omit in sweep mode)")
        return sp

    with_config("validate", "check the surface relation and report structural flags")
    sp = with_config("act", "apply a mapping class word (first token acts first)")
    sp.add_argument("--word", help='e.g. "t1 s1^-1 t3"')
    sp = with_config("orbit", "enumerate the orbit by breadth-first search")
    sp.add_argument("--group", choices=("full", "pure"))
    sp.add_argument("--cap", type=int, help=f"maximum number of states (default {DEFAULT_CAP})")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for the search")
    sp = with_config("classify", "decide finiteness and report bounds")
    sp.add_argument("--search-cap", type=int, dest="search_cap")
    sp = with_config("bounds", "orbit-size bounds for a configuration or a formula")
    sp.add_argument("--search-cap", type=int, dest="search_cap")
    sp.add_argument("--formula", choices=("scalar", "B1", "B2", "expected_affine"))
    for name in ("g", "N", "N1", "N2", "Nrho", "n_prime"):
        sp.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
    sp = sub.add_parser("selftest", help="run the relation and action-axiom checks")
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed_sweep:
        if args.command == "selftest":
            print("selftest takes no configurations", file=sys.stderr)
            return EXIT_INVALID
        try:
            return run_sweep(args)
        except OSError as exc:
            print(f"sweep: {exc}", file=sys.stderr)
            return EXIT_INVALID
    code, report = run(args)
    text = dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"mcgorbits {args.command}: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
