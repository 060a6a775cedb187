"""Command-line entry point: ``torushom {compute,state,verify,table,cache}``.

Exit codes: 0 success, 1 a verification case failed, 2 invalid input,
3 internal contradiction (a mathematical tripwire fired).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from pathlib import Path
from typing import List, Optional, Sequence

from . import invariants as inv
from .cache import cache_info, cache_load, cache_store, default_cache_path
from .errors import FingerprintMismatch, InternalContradiction, TorusHomError, ZeroDenominator
from .formatting import to_latex, to_text
from .ratfield import format_monomial, to_json
from .recursion import DEFAULT_CONVENTIONS, MemoTable, explain, p_column, p_row
from .symmetric import Permutation, State, Theory

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CONTRADICTION = 0, 1, 2, 3

log = logging.getLogger("torushom")


# -- worker plumbing ------------------------------------------------------------
# Work items run either inline against the shared memo or in worker processes
# seeded from it; workers send back the entries they added so the cache grows.

_WORKER_MEMO: Optional[MemoTable] = None


def _seed_worker(entries) -> None:
    global _WORKER_MEMO
    _WORKER_MEMO = MemoTable(DEFAULT_CONVENTIONS)
    for key, value in entries:
        _WORKER_MEMO.insert(key, value)


def _run_item(item: tuple, memo: MemoTable):
    kind, args = item
    if kind == "mirror":
        return inv.mirror_verify(*args, memo=memo)
    if kind == "invariance":
        return inv.invariance_verify(*args, memo=memo)
    if kind == "uncolored":
        return inv.uncolored_mirror_verify(*args, memo=memo)
    if kind == "hrw":
        return inv.hrw_ratio_check(*args, memo=memo)
    if kind == "homfly":
        m, n = args
        try:
            cmp = inv.homfly_compare(m, n, memo)
        except ZeroDenominator as exc:
            return inv.CheckReport(f"homfly T({m},{n})", None, False, str(exc))
        return inv.CheckReport(f"homfly T({m},{n})", cmp.unit, cmp.passed)
    if kind == "report":
        spec, reduced = args
        return inv.report(spec, reduced=reduced, memo=memo)
    raise ValueError(f"unknown work item {kind!r}")


def _worker(item: tuple):
    before = len(_WORKER_MEMO)
    keys_before = None if before == 0 else {k for k, _ in _WORKER_MEMO.items()}
    result = _run_item(item, _WORKER_MEMO)
    new = [(k, v) for k, v in _WORKER_MEMO.items() if keys_before is None or k not in keys_before]
    return result, new


def run_items(items: Sequence[tuple], memo: MemoTable, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [_run_item(item, memo) for item in items]
    seed = list(memo.items())
    out = []
    with ProcessPoolExecutor(max_workers=jobs, initializer=_seed_worker, initargs=(seed,)) as pool:
        for result, new in pool.map(_worker, items):
            for key, value in new:
                memo.insert(key, value)
            out.append(result)
    return out


# -- helpers --------------------------------------------------------------------

def _format_unit(unit) -> str:
    if unit is None:
        return "none"
    sign, mono = unit
    return ("+" if sign > 0 else "-") + format_monomial(mono)


def _render(value, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_json(value), sort_keys=True)
    if fmt == "latex":
        return to_latex(value)
    return to_text(value)


def _cache_path(args) -> Optional[Path]:
    if getattr(args, "cache", None):
        return Path(args.cache)
    return default_cache_path()


def _open_memo(args) -> MemoTable:
    path = _cache_path(args)
    if path is None:
        return MemoTable(DEFAULT_CONVENTIONS)
    return cache_load(path)


def _close_memo(args, memo: MemoTable) -> None:
    path = _cache_path(args)
    if path is not None:
        n = cache_store(memo, path)
        log.info("stored %d new entries in %s", n, path)


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return n


# -- commands ---------------------------------------------------------------------

def cmd_compute(args, out) -> int:
    m, n = args.torus
    spec = inv.TorusLinkSpec(m, n, args.color, Theory(args.theory))
    memo = _open_memo(args)
    rep = inv.report(spec, reduced=args.reduced, memo=memo)
    if args.format == "json":
        print(rep.to_json(), file=out)
    else:
        value = rep.reduced if args.reduced else rep.value
        print(_render(value, args.format), file=out)
    _close_memo(args, memo)
    return EXIT_OK


def cmd_state(args, out) -> int:
    sigma = Permutation.parse(args.sigma) if args.sigma is not None else None
    if sigma is None:
        sigma = Permutation.identity(args.v.count("1"))
    s = State(args.v, args.w, sigma, Theory(args.theory))
    if args.explain:
        print(explain(s, max_nodes=args.max_nodes).render(), file=out)
        return EXIT_OK
    memo = _open_memo(args)
    value = p_column(s, memo) if s.theory is Theory.COLUMN else p_row(s, memo)
    print(_render(value, args.format), file=out)
    _close_memo(args, memo)
    return EXIT_OK


def _verify_items(args) -> List[tuple]:
    suite = args.suite
    mx = args.max
    if suite == "mirror":
        return [("mirror", (m, n, k)) for m in range(1, mx + 1) for n in range(1, mx + 1)
                for k in range(1, args.color_max + 1)]
    if suite == "invariance":
        return [("invariance", (m, n, k)) for m in range(1, mx + 1) for n in range(m + 1, mx + 1)
                for k in range(1, args.color_max + 1)]
    if suite == "uncolored":
        return [("uncolored", (m, n)) for m in range(1, mx + 1) for n in range(1, mx + 1)]
    if suite == "hrw":
        return [("hrw", (k,)) for k in range(1, args.color_max + 1)]
    if suite == "homfly":
        return [("homfly", (m, n)) for m in range(1, mx + 1) for n in range(m, mx + 1) if gcd(m, n) == 1]
    raise ValueError(f"unknown suite {suite!r}")


def cmd_verify(args, out) -> int:
    items = _verify_items(args)
    memo = _open_memo(args)
    results = run_items(items, memo, args.jobs)
    failed = [r for r in results if not r.passed]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        extra = f"  {r.detail}" if r.detail else ""
        print(f"{status}\t{r.label}\tunit={_format_unit(r.unit)}{extra}", file=out)
    print(f"# {args.suite}: {len(results) - len(failed)}/{len(results)} passed", file=out)
    for r in failed:
        print(f"# failing: {r.label}", file=out)
    _close_memo(args, memo)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_table(args, out) -> int:
    theory = Theory(args.theory)
    specs = [inv.TorusLinkSpec(m, n, k, theory) for m in range(1, args.max + 1)
             for n in range(1, args.max + 1) for k in range(1, args.color_max + 1)]
    memo = _open_memo(args)
    reports = run_items([("report", (s, args.reduced)) for s in specs], memo, args.jobs)
    if args.format == "text":
        head = "m\tn\tk\ttheory\tvalue" + ("\treduced" if args.reduced else "")
        print(head, file=out)
    for rep in reports:
        s = rep.spec
        if args.format == "json":
            print(rep.to_json(), file=out)
        elif args.format == "latex":
            print(rep.to_latex(), file=out)
        else:
            row = [str(s.m), str(s.n), str(s.k), s.theory.value, to_text(rep.value)]
            if rep.reduced is not None:
                row.append(to_text(rep.reduced))
            print("\t".join(row), file=out)
    if args.figures:
        from .plotting import plot_support

        fig_dir = Path(args.figures)
        for rep in reports:
            s = rep.spec
            value = rep.reduced if rep.reduced is not None else rep.value
            kind = "reduced" if rep.reduced is not None else "numerator"
            plot_support(value, f"T({s.m},{s.n}) k={s.k} {s.theory.value}, {kind}",
                         fig_dir / f"T{s.m}_{s.n}_k{s.k}_{s.theory.value}.png")
        log.info("wrote %d figures to %s", len(reports), fig_dir)
    _close_memo(args, memo)
    return EXIT_OK


def cmd_cache(args, out) -> int:
    path = _cache_path(args)
    if path is None:
        raise ValueError("no cache path: pass --cache or set TORUSHOM_CACHE")
    info = cache_info(path)
    if info.get("exists") and not info.get("compatible", True):
        print(json.dumps(info, sort_keys=True), file=out)
        raise FingerprintMismatch(f"{path} was written under different conventions")
    print(json.dumps(info, sort_keys=True), file=out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", metavar="PATH", help="memo cache file (default: $TORUSHOM_CACHE)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="torushom",
        description="Graded dimensions of y-ified colored triply-graded homology of torus links.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="invariant of one colored torus link")
    p.add_argument("--torus", nargs=2, type=_positive, metavar=("M", "N"), required=True)
    p.add_argument("--color", type=_positive, default=1, metavar="K")
    p.add_argument("--theory", choices=["column", "row"], default="column")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--format", choices=["json", "text", "latex"], default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("state", parents=[common], help="evaluate one recursion state")
    p.add_argument("--v", required=True, help="top word, e.g. 10")
    p.add_argument("--w", required=True, help="bottom word")
    p.add_argument("--sigma", default=None, help="one-line permutation, e.g. 2,3,1 (default identity)")
    p.add_argument("--theory", choices=["column", "row"], default="column")
    p.add_argument("--format", choices=["json", "text", "latex"], default="text")
    p.add_argument("--explain", action="store_true", help="print the derivation tree instead")
    p.add_argument("--max-nodes", type=_positive, default=10_000)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["mirror", "invariance", "uncolored", "homfly", "hrw"])
    p.add_argument("--max", type=_positive, default=4, metavar="N")
    p.add_argument("--color-max", type=_positive, default=2, metavar="K")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="invariants over a range of (m, n, k)")
    p.add_argument("--max", type=_positive, default=3, metavar="N")
    p.add_argument("--color-max", type=_positive, default=1, metavar="K")
    p.add_argument("--theory", choices=["column", "row"], default="column")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--format", choices=["json", "text", "latex"], default="text")
    p.add_argument("--figures", metavar="DIR", help="also write one support plot per row")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("cache", parents=[common], help="inspect the memo cache")
    p.add_argument("action", choices=["info"])
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except InternalContradiction as exc:
        print(f"internal contradiction: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (TorusHomError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
