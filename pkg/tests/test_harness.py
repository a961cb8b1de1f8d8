"""Tests for the Monte-Carlo experiment harness and its CSV contract."""

from __future__ import annotations

import json

import pytest

from entplan.harness import (
    CSV_HEADER,
    ExperimentRecord,
    Scenario,
    records_to_csv,
    run_scenario,
    summarize,
    write_csv,
    write_summary,
)
from entplan.planner import SETTINGS
from entplan.topology import example_network


def scenario_a(trials: int = 10) -> Scenario:
    return Scenario(
        net=example_network(2),
        sweep="task_draws",
        sweep_values=tuple(range(trials)),
        trials_per_point=1,
        p=0.8,
        settings=SETTINGS,
        master_seed=0,
        n_tasks=5,
    )


def test_scenario_a_record_count():
    records = run_scenario(scenario_a())
    assert len(records) == 40
    assert [r.setting for r in records[:4]] == list(SETTINGS)
    assert all(r.tasks_total == 5 for r in records)


def test_same_master_seed_is_bit_identical():
    a = run_scenario(scenario_a())
    b = run_scenario(scenario_a())
    assert a == b
    assert records_to_csv(a) == records_to_csv(b)


def test_worker_count_does_not_change_records():
    sc = scenario_a(trials=4)
    assert run_scenario(sc, workers=1) == run_scenario(sc, workers=3)


def test_positions_sweep_draws_fresh_placements():
    sc = Scenario(
        net=example_network(2),
        sweep="positions",
        sweep_values=(0, 1, 2),
        trials_per_point=2,
        p=0.8,
        settings=("bm", "sed"),
        master_seed=1,
        n_tasks=3,
    )
    records = run_scenario(sc)
    assert len(records) == 12
    assert {r.sweep_value for r in records} == {0, 1, 2}


def test_n_users_sweep_defaults_task_count():
    sc = Scenario(
        net=example_network(2),
        sweep="n_users",
        sweep_values=(4, 6),
        trials_per_point=1,
        p=0.8,
        settings=("bm",),
        master_seed=0,
    )
    by_value = {r.sweep_value: r for r in run_scenario(sc)}
    assert by_value[4].tasks_total == 3
    assert by_value[6].tasks_total == 5


def test_n_tasks_sweep_sets_task_count():
    sc = Scenario(
        net=example_network(2),
        sweep="n_tasks",
        sweep_values=(1, 4),
        trials_per_point=1,
        p=0.8,
        settings=("bm",),
        master_seed=0,
    )
    by_value = {r.sweep_value: r for r in run_scenario(sc)}
    assert by_value[1].tasks_total == 1
    assert by_value[4].tasks_total == 4


def test_csv_format(tmp_path):
    records = run_scenario(scenario_a(trials=2))
    text = records_to_csv(records)
    lines = text.split("\n")
    assert lines[0] == CSV_HEADER
    assert lines[-1] == ""
    assert len(lines) == 10  # header + 8 rows + final newline
    assert all(line == line.rstrip() for line in lines)
    path = tmp_path / "out.csv"
    write_csv(records, path)
    assert path.read_bytes() == text.encode("utf-8")
    assert b"\r" not in path.read_bytes()


def test_record_validation():
    with pytest.raises(ValueError):
        ExperimentRecord(0, 0, "bm", q_pre=4, q_post=6, tasks_total=1,
                         tasks_failed=0, seed=0)
    with pytest.raises(ValueError):
        ExperimentRecord(0, 0, "bm", q_pre=4, q_post=4, tasks_total=1,
                         tasks_failed=2, seed=0)
    rec = ExperimentRecord(0, 0, "bm", q_pre=4, q_post=4, tasks_total=1,
                           tasks_failed=1, seed=0)
    assert rec.set_failed


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(
            net=example_network(2), sweep="bogus", sweep_values=(0,),
            trials_per_point=1, p=0.8, settings=("bm",), master_seed=0,
        )
    with pytest.raises(ValueError):
        Scenario(
            net=example_network(2), sweep="task_draws", sweep_values=(),
            trials_per_point=1, p=0.8, settings=("bm",), master_seed=0,
        )
    with pytest.raises(ValueError):
        Scenario(
            net=example_network(2), sweep="task_draws", sweep_values=(0,),
            trials_per_point=1, p=1.5, settings=("bm",), master_seed=0,
        )
    with pytest.raises(ValueError):
        Scenario(
            net=example_network(2), sweep="task_draws", sweep_values=(0,),
            trials_per_point=1, p=0.8, settings=("bogus",), master_seed=0,
        )


def test_summarize_single_record():
    rec = ExperimentRecord(3, 0, "bm", q_pre=10, q_post=7, tasks_total=5,
                           tasks_failed=0, seed=9)
    (row,) = summarize([rec])
    assert row["sweep"] == 3 and row["setting"] == "bm"
    assert row["n_trials"] == 1
    assert row["q_pre_mean"] == 10.0
    assert row["q_post_mean"] == 7.0
    assert row["q_post_min"] == row["q_post_max"] == 7
    assert row["tasks_failed_total"] == 0


def test_summarize_counts_failures():
    recs = [
        ExperimentRecord(0, t, "bm", q_pre=16, q_post=9, tasks_total=4,
                         tasks_failed=f, seed=t)
        for t, f in [(0, 0), (1, 2)]
    ]
    (row,) = summarize(recs)
    assert row["tasks_failed_total"] == 2
    assert row["sets_failed_total"] == 1
    assert row["q_post_mean"] == 9.0


def test_write_summary(tmp_path):
    records = run_scenario(scenario_a(trials=2))
    path = tmp_path / "summary.json"
    write_summary(records, path)
    rows = json.loads(path.read_text())
    assert len(rows) == 8  # 2 sweep values x 4 settings
    assert {row["setting"] for row in rows} == set(SETTINGS)
