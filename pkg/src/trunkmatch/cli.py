"""Command-line entry point: ``trunkmatch <command> ...``."""

from __future__ import annotations

import argparse
import difflib
import os
import sys
from typing import Optional

from . import bench as bench_mod
from .graph_io import (Graph, GraphFormatError, GenerationError, InvalidMatchingError,
                       IsolatedVertexError, Matching, gen_gnp, gen_random_regular,
                       parse_dimacs, parse_matching, write_dimacs, write_matching)
from .matcher import MatcherConfig, maximum_matching
from .oracle import OracleSizeError, gallai_edmonds_bruteforce, nu_bruteforce
from .trunk_search import SearchError, render_trace, search

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_INPUT = 3
BUDGET_ENV = "TRUNK_MATCH_BUDGET_FACTOR"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_graph(path: str) -> Graph:
    return parse_dimacs(_read_text(path))


def _sibling_matching(graph_path: str) -> Optional[str]:
    if graph_path == "-":
        return None
    stem, _ = os.path.splitext(graph_path)
    cand = stem + ".matching"
    return cand if os.path.exists(cand) else None


def _budget_factor(flag: Optional[float]) -> float:
    if flag is not None:
        return flag
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise InputError(f"{BUDGET_ENV}={env!r} is not a number") from None
    return 1.0


def _load_start_matching(args, g: Graph, required: bool) -> Optional[Matching]:
    path = args.matching or _sibling_matching(args.graph)
    if path is None:
        if required:
            raise InputError("no matching file: pass --matching or put <graph>.matching next to the graph")
        return None
    return parse_matching(_read_text(path), g)


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    initial = None
    mode = args.init
    if mode == "fixture":
        initial = _load_start_matching(args, g, required=True)
        mode = "greedy"
    cfg = MatcherConfig(init_mode=mode, prefer_free_tips=args.prefer_free_tips,
                        budget_factor=_budget_factor(args.budget_factor))
    res = maximum_matching(g, cfg, initial=initial)
    print(res.summary())
    if args.matching_out:
        _write_text(args.matching_out, write_matching(res.matching))
    if res.budget_exceeded:
        print(f"warning: step budget exceeded for {len(res.budget_exceeded)} roots", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_trace(args) -> int:
    g = _load_graph(args.graph)
    m = _load_start_matching(args, g, required=False) or Matching.empty(g.n)
    try:
        root = g.vertex_by_label(args.root)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    cfg = MatcherConfig(budget_factor=_budget_factor(args.budget_factor))
    out = search(g, m, root, budget=cfg.budget(g), trace=True,
                 prefer_free_tips=args.prefer_free_tips)
    text = render_trace(out.trace, g)
    if args.golden:
        expected = _read_text(args.golden).replace("\r\n", "\n")
        if expected != text:
            sys.stdout.write(text)
            diff = difflib.unified_diff(expected.splitlines(True), text.splitlines(True),
                                        args.golden, "trace")
            sys.stderr.writelines(diff)
            print("trace differs from golden file", file=sys.stderr)
            return 1
    sys.stdout.write(text)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.regular:
        n, d = args.regular
        g = gen_random_regular(int(n), int(d), args.seed)
    else:
        n, p = args.gnp
        g = gen_gnp(int(n), float(p), args.seed)
    _write_text(args.out, write_dimacs(g))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    m = parse_matching(_read_text(args.matching), g)
    nu, _ = nu_bruteforce(g)
    ok = len(m) == nu
    print(f"nu={nu} size={len(m)} maximum={'yes' if ok else 'no'}")
    return EXIT_OK if ok else 1


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    nu, witness = nu_bruteforce(g)
    print(f"nu={nu}")
    if args.witness:
        sys.stdout.write(write_matching(witness))
    return EXIT_OK


def cmd_ge(args) -> int:
    g = _load_graph(args.graph)
    ge = gallai_edmonds_bruteforce(g)

    def names(vs):
        return " ".join(g.label(v) for v in sorted(vs))

    print(f"nu={ge.nu}")
    print(f"|D|={len(ge.D)}")
    print(f"|A|={len(ge.A)}")
    print(f"|C|={len(ge.C)}")
    print(f"D={names(ge.D)}")
    print(f"A={names(ge.A)}")
    print(f"C={names(ge.C)}")
    if ge.problems:
        for p in ge.problems:
            print(f"problem: {p}")
        return 1
    print("structure=ok")
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    """``3,4,5`` or ``start:stop:step`` (stop inclusive)."""
    try:
        if ":" in text:
            a, b, c = (int(x) for x in text.split(":"))
            return list(range(a, b + 1, c))
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def cmd_bench(args) -> int:
    plan = bench_mod.BenchPlan(deltas=args.deltas, sizes=args.sizes,
                               trials_per_cell=args.trials, seed=args.seed,
                               budget_factor=_budget_factor(args.budget_factor),
                               prefer_free_tips=args.prefer_free_tips)
    records = bench_mod.run_bench(plan, workers=args.workers)
    _write_text(args.out, bench_mod.records_to_csv(records))
    if args.plot:
        _write_text(args.plot, bench_mod.emit_plot(records))
    for d in plan.deltas:
        if len(set(plan.sizes)) >= 3:
            slope, r2 = bench_mod.fit_loglog_slope(records, d)
            print(f"delta={d} slope={slope:.3f} r2={r2:.3f}", file=sys.stderr)
    exceeded = sum(r.budget_exceeded_count for r in records)
    if exceeded:
        print(f"budget_exceeded={exceeded}", file=sys.stderr)
        if args.strict:
            return 1
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="trunkmatch", description="Maximum matching by trunk/sprout DFS.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def budget_flag(sp):
        sp.add_argument("--budget-factor", type=float, default=None,
                        help=f"scale the per-search step budget 4(m+1)(n+1); overrides ${BUDGET_ENV}")

    s = sub.add_parser("solve", help="compute a maximum matching")
    s.add_argument("graph", help="DIMACS graph file, '-' for stdin")
    s.add_argument("--init", choices=("empty", "greedy", "fixture"), default="greedy",
                   help="starting matching; 'fixture' reads --matching or <graph>.matching")
    s.add_argument("--matching", help="starting matching file for --init fixture")
    s.add_argument("--prefer-free-tips", action="store_true",
                   help="take a sprout to a free vertex before adjacency order")
    budget_flag(s)
    s.add_argument("--matching-out", help="write the final matching here ('-' for stdout)")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("trace", help="print the step-by-step search from one root as TSV")
    t.add_argument("graph")
    t.add_argument("--root", required=True, help="root vertex label or 1-based index")
    t.add_argument("--matching", help="matching file (default: <graph>.matching if present, else empty)")
    t.add_argument("--golden", help="compare with this TSV and exit 1 on any difference")
    t.add_argument("--prefer-free-tips", action="store_true")
    budget_flag(t)
    t.set_defaults(func=cmd_trace)

    gsp = sub.add_parser("gen", help="write a random graph in DIMACS format")
    kind = gsp.add_mutually_exclusive_group(required=True)
    kind.add_argument("--regular", nargs=2, metavar=("N", "DELTA"), help="random DELTA-regular graph")
    kind.add_argument("--gnp", nargs=2, metavar=("N", "P"), help="G(n,p) with isolated vertices removed")
    gsp.add_argument("--seed", type=int, default=0)
    gsp.add_argument("--out", default="-")
    gsp.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check a matching against the exhaustive optimum (n <= 24)")
    v.add_argument("graph")
    v.add_argument("matching")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive maximum matching size (n <= 24)")
    o.add_argument("graph")
    o.add_argument("--witness", action="store_true", help="also print one optimal matching")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("ge", help="Gallai-Edmonds D/A/C partition by brute force (n <= 20)")
    e.add_argument("graph")
    e.set_defaults(func=cmd_ge)

    b = sub.add_parser("bench", help="time random regular graphs and write CSV")
    b.add_argument("--deltas", type=_int_list, default=[3, 4, 5], help="e.g. 3,4,5")
    b.add_argument("--sizes", type=_int_list, default=list(range(100, 1001, 100)),
                   help="e.g. 100,200 or 100:1000:100")
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    budget_flag(b)
    b.add_argument("--prefer-free-tips", action="store_true")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", default="-", help="CSV destination")
    b.add_argument("--plot", help="write an SVG plot here")
    b.add_argument("--strict", action="store_true", help="exit 1 if any search ran out of budget")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphFormatError, InvalidMatchingError, IsolatedVertexError,
            GenerationError, OracleSizeError, SearchError, bench_mod.BenchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
