"""Command-line front end: list and run identity checks, compute expressions, manage the cache.

Exit codes: 0 success, 1 at least one check failed (or bad input to
``compute``), 2 unknown check, 3 corrupted Macdonald cache.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import identities as ident
from . import macdonald as mac
from . import operators as ops
from .symfunc import SymFunc, _graded_key, to_basis

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_CACHE = 0, 1, 2, 3
ENV_PREFIX = "THETACALC_"


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _env_int(name: str, default: int) -> int:
    raw = _env(name)
    return int(raw) if raw not in (None, "") else default


def _env_flag(name: str) -> bool:
    return str(_env(name, "")).lower() in ("1", "true", "yes", "on")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thetacalc", description="Exact checks of Theta/Delta/Macdonald identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    ls = sub.add_parser("list", help="list the registered checks")
    ls.add_argument("--filter", default=_env("filter"), help="glob on check name or group tag")
    ls.add_argument("--format", choices=("text", "json"), default=_env("format", "text"))

    run = sub.add_parser("run", help="run checks")
    sel = run.add_mutually_exclusive_group()
    sel.add_argument("--all", action="store_true", default=_env_flag("all"))
    sel.add_argument("--check", default=_env("check"), help="glob on check name or group tag")
    run.add_argument("-N", "--bound", type=int, default=_env_int("bound", 4))
    run.add_argument("--qbound", type=int, default=_env_int("qbound", 8))
    run.add_argument("--cache-dir", default=_env("cache_dir"))
    run.add_argument("--jobs", type=int, default=_env_int("jobs", os.cpu_count() or 1))
    run.add_argument("--format", choices=("text", "json"), default=_env("format", "text"))
    run.add_argument("--fail-fast", action="store_true", default=_env_flag("fail_fast"))
    run.add_argument("--no-timings", action="store_true", default=_env_flag("no_timings"),
                     help="zero the timing fields so reports are byte-identical across runs")
    run.add_argument("--mutation", choices=ops.MUTATIONS, default=_env("mutation"),
                     help="deliberately break an operator (to show checks are not vacuous)")

    comp = sub.add_parser("compute", help="apply an operator word to a symmetric function")
    comp.add_argument("expr", help='e.g. "theta(e2) delta(e3) e3"; the rightmost token is the operand')
    comp.add_argument("--basis", choices=("p", "s", "h", "e", "m"), default=_env("basis", "s"))
    comp.add_argument("-N", "--bound", type=int, default=_env_int("bound", mac.MAX_DEGREE),
                      help="largest degree allowed for operand and result")
    comp.add_argument("--cache-dir", default=_env("cache_dir"))

    cache = sub.add_parser("cache", help="fill or verify the Macdonald cache")
    cache.add_argument("action", choices=("warm", "verify"))
    cache.add_argument("--cache-dir", default=_env("cache_dir"), required=_env("cache_dir") is None)
    cache.add_argument("--max-degree", type=int, default=_env_int("max_degree", 6))
    return ap


# ---------------------------------------------------------------------------

def cmd_list(args) -> int:
    checks = ident.select(args.filter)
    if args.format == "json":
        rows = [{"name": c.name, "group": c.group, "ref": c.ref, "params": c.params} for c in checks]
        print(json.dumps(rows, indent=1))
        return EXIT_OK
    width = max((len(c.name) for c in checks), default=4)
    for c in checks:
        print(f"{c.name:<{width}}  [{c.group}]  {c.ref}")
        print(f"{'':<{width}}  params: {c.params}")
    return EXIT_OK


def _print_result(res: ident.CheckResult, timings: bool) -> None:
    ms = f"{res.elapsed_ms:9.1f} ms" if timings else ""
    print(f"{res.status.upper():4}  {res.name:<28} {res.instances_run:6} instances {ms}".rstrip(), flush=True)
    if res.counterexample:
        for key, val in res.counterexample.items():
            text = str(val).strip()
            if text:
                print(f"      {key}: " + text.replace("\n", "\n" + " " * (8 + len(key))))


def cmd_run(args) -> int:
    if args.bound < 0 or args.qbound < 0:
        print("error: bounds must be >= 0", file=sys.stderr)
        return EXIT_FAIL
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_FAIL
    if args.cache_dir:
        os.makedirs(args.cache_dir, exist_ok=True)
        mac.set_store(mac.MacStore(args.cache_dir))
    pattern = None if args.all or not args.check else args.check
    if pattern and not ident.select(pattern):
        try:
            ident.get_check(pattern)
        except ident.UnknownCheckError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_UNKNOWN
    bound = ident.Bound(N=args.bound, qbound=args.qbound)
    timings = not args.no_timings
    try:
        if args.jobs > 1:
            # fill the shared store once so forked workers inherit it
            for n in range(bound.D + 1):
                mac.default_store().degree(n)
        progress = None if args.format == "json" else (lambda r: _print_result(r, timings))
        summary = ident.run_all(bound, pattern, jobs=args.jobs, fail_fast=args.fail_fast,
                                mutation=args.mutation, progress=progress)
    except mac.CacheCorruptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    if args.format == "json":
        print(json.dumps(summary.to_json(timings), indent=1, sort_keys=False))
    else:
        tail = f" in {summary.total_ms / 1000:.1f} s" if timings else ""
        print(f"{len(summary.results)} checks, {summary.instances} instances, {summary.failures} failures{tail}")
    return EXIT_OK if summary.failures == 0 else EXIT_FAIL


_TOKEN = re.compile(r"[^\s()\[\]]+(?:\([^()]*\)|\[[^\]]*\])*(?:\^-?1|\*)?")


def _tokens(expr: str):
    """Split on whitespace outside brackets; yields (token, column)."""
    pos = 0
    out = []
    while pos < len(expr):
        if expr[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(expr, pos)
        if not mt or not mt.group():
            raise SyntaxError(f"unexpected character {expr[pos]!r} at column {pos + 1}")
        out.append((mt.group(), pos + 1))
        pos = mt.end()
    return out


def evaluate_expression(expr: str, bound: int = mac.MAX_DEGREE) -> SymFunc:
    toks = _tokens(expr)
    if not toks:
        raise SyntaxError("empty expression")
    *atoms, (operand, col) = toks
    try:
        F = ops.parse_symfunc(operand)
    except ValueError as exc:
        raise SyntaxError(f"{exc} at column {col}") from None
    if F.max_degree() > bound:
        raise mac.DegreeError(f"operand degree {F.max_degree()} exceeds bound {bound}")
    word = []
    for tok, col in atoms:
        try:
            word.append(ops.parse_atom(tok))
        except ValueError as exc:
            raise SyntaxError(f"{exc} at column {col}") from None
    result = ops.op_from_word(word)(F) if word else F
    if result.max_degree() > bound:
        raise mac.DegreeError(f"result degree {result.max_degree()} exceeds bound {bound}")
    return result


def format_in_basis(f: SymFunc, basis: str) -> str:
    coeffs = f.terms if basis == "p" else to_basis(f, basis)
    if not coeffs:
        return "0"
    lines = []
    for lam in sorted(coeffs, key=_graded_key):
        lines.append(f"{basis}[{','.join(map(str, lam))}] : {coeffs[lam]}")
    return "\n".join(lines)


def cmd_compute(args) -> int:
    if args.cache_dir:
        mac.set_store(mac.MacStore(args.cache_dir))
    try:
        result = evaluate_expression(args.expr, args.bound)
    except SyntaxError as exc:
        print(f"parse error: {exc.msg if hasattr(exc, 'msg') else exc}", file=sys.stderr)
        return EXIT_FAIL
    except mac.DegreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except mac.CacheCorruptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(format_in_basis(result, args.basis))
    return EXIT_OK


def cmd_cache(args) -> int:
    try:
        if args.action == "warm":
            info = mac.cache_io(args.cache_dir, "store", args.max_degree)
        else:
            info = mac.cache_io(args.cache_dir, "load", args.max_degree)
    except mac.CacheCorruptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    print(json.dumps(info, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"list": cmd_list, "run": cmd_run, "compute": cmd_compute, "cache": cmd_cache}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
