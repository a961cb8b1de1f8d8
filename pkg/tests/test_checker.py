"""Tests for the schedule search that serves tasks from a resource state."""

from __future__ import annotations

import numpy as np
import pytest

from entplan.checker import format_schedule, network_success, satisfy
from entplan.graphstate import QubitGraph
from entplan.planner import build_plan, merging_algorithm
from entplan.taskgen import Task, example_task_set
from entplan.topology import example_network


def rng(*entropy: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(list(entropy)))


def eight_qubit_state() -> QubitGraph:
    """The known optimal 8-qubit state for the demo tasks.

    Users 3 and 5 hold two qubits each; every task is reachable with
    local operations alone.
    """
    return QubitGraph(
        {0: 0, 1: 1, 2: 2, 3: 2, 4: 3, 5: 4, 6: 4, 7: 5},
        [(0, 4), (0, 5), (5, 1), (1, 2), (3, 6), (3, 7)],
    )


def merged_plan(setting: str, d: int = 7):
    plan = build_plan(setting, example_task_set(), example_network(d), rng(0))
    return merging_algorithm(plan)


def test_eight_qubit_state_serves_every_task():
    state = eight_qubit_state()
    for task in example_task_set().tasks:
        assert satisfy(state, task) is not None


def test_satisfy_finds_interior_path():
    """Task (1,2) + (3,6) runs through user 5's left qubit."""
    sched = satisfy(eight_qubit_state(), Task(((0, 1), (2, 5))))
    assert sched is not None
    assert sched.pair_paths[(0, 1)] == [0, 5, 1]
    assert sched.pair_paths[(2, 5)] == [3, 7]


def test_sed_plan_satisfies_all_with_satellite():
    plan = merged_plan("sed")
    report = network_success(plan, example_task_set())
    assert report.satisfied == [True] * 4
    assert not report.set_failed
    lines = [format_schedule(s, plan.state) for s in report.schedules]
    assert lines == ["S_{1,2} Z_5", "S_{1,5}", "S_{2,4} Z_6", "S_{2,3} Z_3"]


def test_bm_plan_satisfies_all():
    report = network_success(merged_plan("bm"), example_task_set())
    assert report.satisfied == [True] * 4
    assert report.n_failed == 0


def test_ec_plan_below_two_fails_user2_tasks():
    report = network_success(merged_plan("ec", d=1), example_task_set())
    assert report.satisfied == [False, True, False, False]
    assert report.n_failed == 3
    assert report.set_failed


def test_empty_task_is_trivially_satisfied():
    sched = satisfy(QubitGraph({}), Task(()))
    assert sched is not None
    assert sched.ops == []
    assert format_schedule(sched, QubitGraph({})) == "(nothing to do)"


def test_missing_entanglement_is_unsatisfiable():
    state = QubitGraph({0: 0, 1: 1, 2: 2, 3: 3}, [(0, 1)])
    assert satisfy(state, Task(((2, 3),))) is None


def test_satellite_pair_must_belong_to_task():
    with pytest.raises(ValueError):
        satisfy(eight_qubit_state(), Task(((0, 1),)), sed_pair=(2, 5))


def test_satellite_covers_its_pair():
    state = QubitGraph({0: 0, 1: 1}, [])
    assert satisfy(state, Task(((0, 1),))) is None
    assert satisfy(state, Task(((0, 1),)), sed_pair=(0, 1)) is not None


def test_repeater_merge_schedule():
    """Unentangled qubits at one user bridge a pair via merge plus X."""
    state = QubitGraph({0: 0, 1: 2, 2: 2, 3: 1}, [(0, 1), (2, 3)])
    sched = satisfy(state, Task(((0, 1),)))
    assert sched is not None
    kinds = [op[0] for op in sched.ops]
    assert "merge" in kinds and "X" in kinds


def test_schedule_leaves_untouched_components_alone():
    """A task must not spend qubits of components it never enters."""
    state = QubitGraph(
        {0: 0, 1: 1, 2: 2, 3: 3}, [(0, 1), (2, 3)]
    )
    sched = satisfy(state, Task(((0, 1),)))
    assert sched is not None
    assert sched.ops == []


def test_network_success_skips_infeasible_without_search():
    plan = build_plan("ec", example_task_set(), example_network(1), rng(0))
    report = network_success(merging_algorithm(plan), example_task_set())
    assert [report.schedules[k] for k in sorted(plan.infeasible_tasks)] == [
        None,
        None,
        None,
    ]
