"""Runtime scaling on random regular graphs: CSV records, log-log fit, SVG plot."""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .graph_io import gen_random_regular
from .matcher import MatcherConfig, maximum_matching

CSV_HEADER = "delta,n,trial,seed,wall_micros,matched,augmentations,steps,budget_exceeded"


class BenchError(ValueError):
    pass


@dataclass
class BenchPlan:
    deltas: Sequence[int] = (3, 4, 5)
    sizes: Sequence[int] = tuple(range(100, 1001, 100))
    trials_per_cell: int = 5
    seed: int = 0
    budget_factor: float = 1.0
    prefer_free_tips: bool = False

    def validate(self) -> None:
        if self.trials_per_cell < 1:
            raise BenchError("trials_per_cell must be >= 1")
        for d in self.deltas:
            for n in self.sizes:
                if (n * d) % 2 or d >= n or d < 1:
                    raise BenchError(f"no {d}-regular graph on {n} vertices")

    def cells(self) -> list[tuple[int, int, int, int]]:
        """``(delta, n, trial, graph_seed)`` for every run, in record order."""
        out = []
        for d in self.deltas:
            for n in self.sizes:
                for t in range(self.trials_per_cell):
                    out.append((d, n, t, derive_seed(self.seed, d, n, t)))
        return out


def derive_seed(seed: int, delta: int, n: int, trial: int) -> int:
    # keeps every cell's graph independent of plan shape and ordering
    return (seed * 1_000_003 + delta * 10_007 + n * 101 + trial) % (1 << 63)


@dataclass
class BenchRecord:
    delta: int
    n: int
    trial: int
    seed: int
    wall_micros: int
    matched: int
    augmentations: int
    steps: int
    budget_exceeded_count: int
    # occupancy peaks; kept in memory only, not written to CSV
    max_path: int = field(default=0, compare=False)
    max_sprouts: int = field(default=0, compare=False)

    def csv_row(self) -> tuple[int, ...]:
        return (self.delta, self.n, self.trial, self.seed, self.wall_micros, self.matched,
                self.augmentations, self.steps, self.budget_exceeded_count)


def run_one(delta: int, n: int, trial: int, seed: int, budget_factor: float = 1.0,
            prefer_free_tips: bool = False) -> BenchRecord:
    g = gen_random_regular(n, delta, seed)
    cfg = MatcherConfig(budget_factor=budget_factor, prefer_free_tips=prefer_free_tips)
    t0 = time.perf_counter_ns()
    res = maximum_matching(g, cfg)
    wall = (time.perf_counter_ns() - t0) // 1000
    return BenchRecord(delta, n, trial, seed, wall, len(res.matching),
                       res.augmentations, res.total_steps, len(res.budget_exceeded),
                       res.max_path, res.max_sprouts)


def run_bench(plan: BenchPlan, workers: int = 1, progress=None) -> list[BenchRecord]:
    plan.validate()
    cells = plan.cells()
    if workers <= 1:
        records = []
        for d, n, t, s in cells:
            rec = run_one(d, n, t, s, plan.budget_factor, plan.prefer_free_tips)
            if progress is not None:
                progress(rec)
            records.append(rec)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(run_one, d, n, t, s, plan.budget_factor, plan.prefer_free_tips)
                    for d, n, t, s in cells]
            records = [f.result() for f in futs]
    records.sort(key=lambda r: (r.delta, r.n, r.trial))
    return records


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER.split(","))
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[BenchRecord]:
    rows = csv.reader(io.StringIO(text))
    header = next(rows)
    if ",".join(header) != CSV_HEADER:
        raise BenchError("unexpected CSV header")
    return [BenchRecord(*(int(x) for x in row)) for row in rows if row]


def _per_n(records: Iterable[BenchRecord], delta: int) -> dict[int, list[int]]:
    by_n: dict[int, list[int]] = {}
    for r in records:
        if r.delta == delta:
            by_n.setdefault(r.n, []).append(r.wall_micros)
    return dict(sorted(by_n.items()))


def fit_loglog_slope(records: Iterable[BenchRecord], delta: int) -> tuple[float, float]:
    """Least-squares slope of log(mean time) against log(n), and its r^2."""
    by_n = _per_n(records, delta)
    if len(by_n) < 3:
        raise BenchError(f"need >= 3 distinct n for delta={delta}, have {len(by_n)}")
    xs = [math.log(n) for n in by_n]
    ys = [math.log(max(statistics.fmean(ts), 1e-9)) for ts in by_n.values()]
    slope, _ = statistics.linear_regression(xs, ys)
    my = statistics.fmean(ys)
    ss_tot = sum((y - my) ** 2 for y in ys)
    if ss_tot == 0:
        return slope, 1.0
    r = statistics.correlation(xs, ys)
    return slope, r * r


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def emit_plot(records: Sequence[BenchRecord], width: int = 640, height: int = 480) -> str:
    """Log-log SVG: one series per degree, mean with min/max whiskers per n."""
    if not records:
        raise BenchError("no records to plot")
    deltas = sorted({r.delta for r in records})
    series = {d: _per_n(records, d) for d in deltas}
    all_n = [n for s in series.values() for n in s]
    all_t = [max(t, 1) for s in series.values() for ts in s.values() for t in ts]
    x_lo, x_hi = math.log10(min(all_n)), math.log10(max(all_n))
    y_lo, y_hi = math.log10(min(all_t)), math.log10(max(all_t))
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    left, right, top, bottom = 70, 20, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def px(n: float) -> float:
        return left + (math.log10(n) - x_lo) / (x_hi - x_lo) * pw

    def py(t: float) -> float:
        return top + (1 - (math.log10(max(t, 1)) - y_lo) / (y_hi - y_lo)) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
           f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle" '
           f'font-size="12">n (log scale)</text>',
           f'<text x="15" y="{top + ph / 2:.1f}" text-anchor="middle" font-size="12" '
           f'transform="rotate(-90 15 {top + ph / 2:.1f})">wall time, us (log scale)</text>']
    for n in sorted(set(all_n)):
        out.append(f'<text x="{px(n):.1f}" y="{top + ph + 15}" text-anchor="middle" '
                   f'font-size="9">{n}</text>')
    for k, d in enumerate(deltas):
        color = _COLORS[k % len(_COLORS)]
        pts = []
        for n, ts in series[d].items():
            mean = statistics.fmean(ts)
            x, y = px(n), py(mean)
            pts.append(f"{x:.2f},{y:.2f}")
            out.append(f'<line x1="{x:.2f}" y1="{py(min(ts)):.2f}" x2="{x:.2f}" '
                       f'y2="{py(max(ts)):.2f}" stroke="{color}"/>')
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
        if len(pts) > 1:
            out.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}"/>')
        out.append(f'<text x="{left + 10}" y="{top + 15 + 15 * k}" font-size="12" '
                   f'fill="{color}">{escape(f"delta={d}")}</text>')
    out.append("</svg>\n")
    return "\n".join(out)
