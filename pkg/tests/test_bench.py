import xml.etree.ElementTree as ET

import pytest

from trunkmatch.bench import (CSV_HEADER, BenchError, BenchPlan, BenchRecord, emit_plot,
                              fit_loglog_slope, records_from_csv, records_to_csv, run_bench)


def _strip_time(records):
    return [(r.delta, r.n, r.trial, r.seed, r.matched, r.augmentations, r.steps,
             r.budget_exceeded_count) for r in records]


def test_small_plan_runs():
    recs = run_bench(BenchPlan(deltas=[3], sizes=[100], trials_per_cell=2, seed=9))
    assert len(recs) == 2
    for r in recs:
        assert r.delta == 3 and r.n == 100 and r.matched <= 50 and r.wall_micros >= 0
        assert r.max_path <= 100


def test_plan_is_deterministic():
    plan = BenchPlan(deltas=[3, 4], sizes=[20, 30], trials_per_cell=2, seed=4)
    assert _strip_time(run_bench(plan)) == _strip_time(run_bench(plan))
    assert plan.cells()[0][3] != BenchPlan(deltas=[3], sizes=[20], seed=5).cells()[0][3]


def test_infeasible_plan():
    with pytest.raises(BenchError):
        run_bench(BenchPlan(deltas=[3], sizes=[101]))
    with pytest.raises(BenchError):
        BenchPlan(trials_per_cell=0).validate()


def _synthetic(power, scale=3.0):
    return [BenchRecord(3, n, t, 0, int(scale * n ** power), n // 2, 0, 0, 0)
            for n in (100, 200, 400, 800, 1600) for t in range(2)]


@pytest.mark.parametrize("power", [1, 2])
def test_slope_of_exact_power_law(power):
    slope, r2 = fit_loglog_slope(_synthetic(power, 7.0), 3)
    assert slope == pytest.approx(power, abs=1e-4)
    assert r2 == pytest.approx(1.0, abs=1e-9)


def test_slope_needs_three_sizes():
    with pytest.raises(BenchError):
        fit_loglog_slope(_synthetic(2)[:4], 3)


def test_csv_round_trip():
    recs = _synthetic(2)
    text = records_to_csv(recs)
    assert text.splitlines()[0] == CSV_HEADER
    assert records_from_csv(text) == recs
    with pytest.raises(BenchError):
        records_from_csv("a,b\n1,2\n")


def test_plot_is_wellformed_and_deterministic():
    recs = _synthetic(2) + [BenchRecord(4, r.n, r.trial, 0, r.wall_micros * 2, 0, 0, 0, 0)
                            for r in _synthetic(2)]
    svg = emit_plot(recs)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 2
    assert emit_plot(recs) == svg


def test_plot_rejects_empty():
    with pytest.raises(BenchError):
        emit_plot([])


def test_prefer_free_tips_plan():
    plan = BenchPlan(deltas=[3], sizes=[40], trials_per_cell=2, seed=1, prefer_free_tips=True)
    recs = run_bench(plan)
    assert [r.matched for r in recs] == [20, 20]
