"""Acceptance gate: one PASS/FAIL line per criterion, printed after the run.

Criteria 5 and 6 share the desk-scale bench (about two minutes single-worker);
criteria 3, 4, 5 and 7 share the small-graph differential suite.
"""

import time

import pytest
from conftest import ACCEPTANCE_LINES, ROOT

from test_coloring import random_augmentation_instances
from trunkmatch import bench
from trunkmatch.cli import main
from trunkmatch.coloring import eliminate_along_path
from trunkmatch.fixtures import fixture
from trunkmatch.graph_io import Graph, gen_gnp, gen_random_regular
from trunkmatch.matcher import MatcherConfig, augment, maximum_matching
from trunkmatch.oracle import (gallai_edmonds_bruteforce, has_augmenting_path_exhaustive,
                               nu_bruteforce, write_counterexample)
from trunkmatch.trunk_search import Result, search

ARTIFACTS = ROOT / "artifacts"

GNP_GRAPHS = 10_000
REGULAR_GRAPHS = 1_000
SUITE_SECONDS = 300
BENCH_SECONDS = 600
SLOPE_RANGE = (1.5, 2.5)
MIN_R2 = 0.9
COLOR_INSTANCES = 1_000
GE_RANDOM = 200


def report(number, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


# differential suite shared by criteria 3, 4, 5 and 7

def _gnp_corpus():
    ps = (0.2, 0.4, 0.6)
    k = seed = 0
    while k < GNP_GRAPHS:
        n, p = 2 + seed % 11, ps[(seed // 11) % 3]
        g = gen_gnp(n, p, seed)
        seed += 1
        if g.m == 0:
            continue
        yield "gnp", seed - 1, g
        k += 1


def _regular_corpus():
    shapes = [(n, d) for n in range(4, 13) for d in (1, 2, 3, 4, 5) if d < n and n * d % 2 == 0]
    for i in range(REGULAR_GRAPHS):
        n, d = shapes[i % len(shapes)]
        yield "regular", i, gen_random_regular(n, d, i)


class SuiteStats:
    def __init__(self):
        self.graphs = self.invalid = self.short = self.fails = 0
        self.path_after_fail = []
        self.budget_exceeded = 0
        self.counterexamples = []
        self.path_over_n = self.sprouts_over_m = 0
        self.regular_max_sprouts_ratio = 0.0
        self.seconds = 0.0


@pytest.fixture(scope="module")
def suite():
    st = SuiteStats()
    t0 = time.perf_counter()
    for kind, seed, g in list(_gnp_corpus()) + list(_regular_corpus()):
        nu, witness = nu_bruteforce(g)
        for mode in ("empty", "greedy"):
            fails = []

            def watch(v0, m, out):
                if out.result is Result.NO_AUGMENTING_PATH:
                    fails.append((v0, m))
                elif out.result is Result.BUDGET_EXCEEDED:
                    st.budget_exceeded += 1

            res = maximum_matching(g, MatcherConfig(init_mode=mode), observer=watch)
            st.graphs += 1
            st.fails += len(fails)
            for v0, m in fails:
                found, path = has_augmenting_path_exhaustive(g, m, v0)
                if found:
                    st.path_after_fail.append((kind, seed, mode, v0, path))
            try:
                res.matching.validate(g)
            except ValueError:
                st.invalid += 1
            if len(res.matching) > nu:
                st.invalid += 1
            if len(res.matching) < nu:
                st.short += 1
                st.counterexamples.append(write_counterexample(
                    str(ARTIFACTS / "counterexamples"), g,
                    {"kind": kind, "seed": seed, "init_mode": mode, "nu": nu,
                     "matched": len(res.matching),
                     "matching": sorted(res.matching.edges),
                     "oracle_witness": sorted(witness.edges),
                     "failed_roots": sorted(res.failed_roots)}))
            st.path_over_n += res.max_path > g.n
            st.sprouts_over_m += res.max_sprouts > g.m
            if kind == "regular":
                st.regular_max_sprouts_ratio = max(st.regular_max_sprouts_ratio,
                                                   res.max_sprouts / g.n)
    st.seconds = time.perf_counter() - t0
    return st


@pytest.fixture(scope="module")
def desk_bench():
    plan = bench.BenchPlan()
    t0 = time.perf_counter()
    records = bench.run_bench(plan)
    seconds = time.perf_counter() - t0
    ARTIFACTS.mkdir(exist_ok=True)
    (ARTIFACTS / "bench.csv").write_text(bench.records_to_csv(records))
    (ARTIFACTS / "bench.svg").write_text(bench.emit_plot(records))
    return plan, records, seconds


# 1

GOLDEN = [("fig4", "table1"), ("fig4_alt", "table1_alt"), ("fig5", "table2"),
          ("fig5_alt", "table2_alt"), ("fig8", "fig8")]

FIG8_STATES = [
    "v0 0 v1 1 va 0 vb 1 vc 0 vf 1 vg 0 vc 1",
    "v0 0 v1 1 va 0 vb 1 vc 0 vg 1",
    "v0 0 v1 1 va 0 vb 1 vc 0 vg 1 vf 0 vd 1 ve 0 va 1",
    "v0 0 v1 1 va 0 vb 1 vc 0 vg 1 vf 0 vc 1",
    "v0 0 v1 1 va 0 ve 1",
    "v0 0 v1 1 va 0 ve 1 vd 0 vf 1 vg 0 vc 1 vb 0 va 1",
    "v0 0 v1 1 va 0 ve 1 vd 0 vf 1 vg 0 vc 1 vb 0 vh 1",
]


def test_criterion_1_golden_traces(capsys):
    t0 = time.perf_counter()
    codes = {}
    for graph, golden in GOLDEN:
        codes[golden] = main(["trace", str(ROOT / "fixtures" / f"{graph}.dimacs"),
                              "--root", "v0", "--golden", str(ROOT / "golden" / f"{golden}.tsv")])
    capsys.readouterr()
    g, m = fixture("fig8")
    out = search(g, m, g.vertex_by_label("v0"), trace=True)
    paths = iter(" ".join(f"{g.label(e.vertex)} {e.parity}" for e in r.path) for r in out.trace)
    states_ok = all(s in paths for s in FIG8_STATES)
    final = " ".join(g.label(v) for v in out.path)
    ms = (time.perf_counter() - t0) * 1000
    ok = (all(c == 0 for c in codes.values()) and states_ok
          and final == "v0 v1 va ve vd vf vg vc vb vh" and ms < 1000)
    report(1, ok, f"golden exit codes {codes}; fig8 states in order={states_ok}; "
                  f"final path {final}; {ms:.0f} ms")
    assert ok


# 2

def test_criterion_2_worked_examples():
    g4, m4 = fixture("fig4")
    r4 = maximum_matching(g4, initial=m4)
    fig4_ok = len(r4.matching) == 5 and len(r4.matching.matched_vertices()) == 10
    gs, _ = fixture("sylvester")
    syl = {mode: maximum_matching(gs, MatcherConfig(init_mode=mode)).exposed
           for mode in ("empty", "greedy")}
    gp, _ = fixture("petersen")
    pet = len(maximum_matching(gp, MatcherConfig(init_mode="empty")).matching)
    ok = fig4_ok and set(syl.values()) == {2} and pet == 5
    report(2, ok, f"fig4 |M|={len(r4.matching)}; sylvester exposed={syl}; petersen |M|={pet}")
    assert ok


# 3

def test_criterion_3_oracle_differential(suite):
    ok = (suite.invalid == 0 and suite.short == 0 and suite.seconds < SUITE_SECONDS
          and suite.graphs >= 2 * (GNP_GRAPHS + REGULAR_GRAPHS))
    report(3, ok, f"{suite.graphs} runs ({GNP_GRAPHS} G(n,p) + {REGULAR_GRAPHS} regular, "
                  f"empty and greedy init); invalid={suite.invalid}; |M|<nu={suite.short}; "
                  f"{suite.seconds:.0f} s")
    assert suite.invalid == 0, "matcher produced an invalid matching or one above nu"
    assert suite.short == 0, f"|M| < nu, counterexamples: {suite.counterexamples[:5]}"
    assert suite.seconds < SUITE_SECONDS


# 4

def test_criterion_4_failed_search_means_no_path(suite):
    ok = not suite.path_after_fail
    report(4, ok, f"{suite.fails} failed searches re-checked exhaustively; "
                  f"violations={len(suite.path_after_fail)}")
    assert ok, suite.path_after_fail[:5]


# 5

def test_criterion_5_no_budget_exceeded(suite, desk_bench):
    _, records, _ = desk_bench
    in_bench = sum(r.budget_exceeded_count for r in records)
    cells = sorted({(r.delta, r.n) for r in records if r.budget_exceeded_count})
    ok = suite.budget_exceeded == 0 and in_bench == 0
    report(5, ok, f"BudgetExceeded: suite={suite.budget_exceeded}, bench={in_bench}"
                  + (f" in (delta, n) cells {cells}" if cells else ""))
    assert ok


# 6

def test_criterion_6_scaling(desk_bench):
    plan, records, seconds = desk_bench
    fits = {d: bench.fit_loglog_slope(records, d) for d in plan.deltas}
    lo, hi = SLOPE_RANGE
    ok = (all(lo <= s <= hi and r2 >= MIN_R2 for s, r2 in fits.values())
          and seconds < BENCH_SECONDS)
    shown = ", ".join(f"delta={d} slope={s:.2f} r2={r2:.2f}" for d, (s, r2) in fits.items())
    report(6, ok, f"{shown}; bench {seconds:.0f} s")
    assert ok


# 7

def test_criterion_7_space(suite, desk_bench):
    _, records, _ = desk_bench
    bench_path_over = sum(r.max_path > r.n for r in records)
    bench_sprouts_over = sum(r.max_sprouts > r.n * r.delta // 2 for r in records)
    ratio = max([suite.regular_max_sprouts_ratio] + [r.max_sprouts / r.n for r in records])
    peak = max(records, key=lambda r: r.max_sprouts)
    ok = (suite.path_over_n == 0 and suite.sprouts_over_m == 0 and bench_path_over == 0
          and bench_sprouts_over == 0 and ratio <= 2)
    report(7, ok, f"|P|>n: {suite.path_over_n + bench_path_over}; |S|>m: "
                  f"{suite.sprouts_over_m + bench_sprouts_over}; max |S|/n on regular graphs "
                  f"{ratio:.2f} (peak |S|={peak.max_sprouts} at delta={peak.delta} n={peak.n})")
    assert ok


# 8

def test_criterion_8_coloring_equivalence():
    agree = inconsistent = 0
    instances = random_augmentation_instances(COLOR_INSTANCES, seed=8)
    for g, m, c, p in instances:
        bad = []
        walked = eliminate_along_path(c, p, on_step=lambda cfg: bad.append(not cfg.is_consistent()))
        inconsistent += sum(bad)
        agree += walked.to_matching() == augment(m, p, g)
    ok = agree == len(instances) == COLOR_INSTANCES and inconsistent == 0
    report(8, ok, f"{agree}/{len(instances)} walks equal M xor P; "
                  f"inconsistent intermediate configurations={inconsistent}")
    assert ok


# 9

def test_criterion_9_gallai_edmonds():
    graphs = [("K3", Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])),
              ("sylvester", fixture("sylvester")[0])]
    seed = 0
    while len(graphs) < 2 + GE_RANDOM:
        g = gen_gnp(4 + seed % 11, (0.15, 0.25, 0.4)[seed % 3], 50_000 + seed)
        seed += 1
        if g.m:
            graphs.append((f"gnp#{seed - 1}", g))
    problems = []
    for name, g in graphs:
        ge = gallai_edmonds_bruteforce(g)
        problems += [f"{name}: {p}" for p in ge.problems]
    ok = not problems
    report(9, ok, f"{len(graphs)} graphs; structure problems={len(problems)}")
    assert ok, problems[:5]
