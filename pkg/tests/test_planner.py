"""Tests for the resource-state builders and the merging reduction."""

from __future__ import annotations

import numpy as np
import pytest

from entplan.graphstate import QubitGraph
from entplan.planner import (
    build_bm,
    build_ec,
    build_plan,
    build_sed,
    build_sed_ec,
    merging_algorithm,
    plan_from_dict,
    plan_to_dict,
    q_count,
)
from entplan.taskgen import Task, TaskSet, example_task_set
from entplan.topology import GridNetwork, example_network


def rng(*entropy: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(list(entropy)))


def owner_edges(state: QubitGraph) -> list[tuple[int, int]]:
    return sorted(
        tuple(sorted((state.owner(a), state.owner(b)))) for a, b in state.edges()
    )


def test_q_count_on_states_and_plans():
    assert q_count(QubitGraph({})) == 0
    eight = QubitGraph({q: q % 6 for q in range(8)})
    assert q_count(eight) == 8
    assert q_count(build_bm(example_task_set())) == 16


def test_bm_example_golden():
    plan = build_bm(example_task_set())
    assert q_count(plan) == 16
    assert len(plan.state.edges()) == 8
    assert plan.setting == "bm"
    assert plan.sed_choice == [None] * 4
    assert plan.infeasible_tasks == frozenset()


def test_bm_empty_task_set():
    plan = build_bm(TaskSet(n_users=4, tasks=()))
    assert q_count(plan) == 0


def test_bm_single_pair():
    plan = build_bm(TaskSet(n_users=2, tasks=(Task(((0, 1),)),)))
    assert q_count(plan) == 2
    assert owner_edges(plan.state) == [(0, 1)]


def test_sed_example_choices_and_state():
    plan = build_sed(example_task_set(), example_network(), rng(0))
    assert plan.sed_choice == [(0, 1), (0, 4), (1, 3), (1, 2)]
    assert q_count(plan) == 8
    assert owner_edges(plan.state) == [(0, 3), (2, 4), (2, 5), (4, 5)]


def test_sed_single_pair_tasks_leave_nothing():
    ts = TaskSet(
        n_users=4, tasks=(Task(((0, 1),)), Task(((2, 3),)), Task(((0, 2),)))
    )
    plan = build_sed(ts, GridNetwork(4, 1, 100.0, tuple((x, 0) for x in range(4)), 7), rng(0))
    assert q_count(plan) == 0
    assert all(pair is not None for pair in plan.sed_choice)


def test_sed_tie_break_is_seeded():
    # two pairs of equal distance: the removal choice follows the rng stream
    net = GridNetwork(2, 2, 100.0, ((0, 0), (1, 1), (1, 0), (0, 1)), 7)
    ts = TaskSet(n_users=4, tasks=(Task(((0, 1), (2, 3))),))
    seen = {
        build_sed(ts, net, rng(s)).sed_choice[0] for s in range(40)
    }
    assert seen == {(0, 1), (2, 3)}  # both distance-1 pairs get picked


def test_ec_with_loose_threshold_equals_bm():
    ts = example_task_set()
    plan = build_ec(ts, example_network(7), rng(0))
    bench = build_bm(ts)
    assert plan.state == bench.state
    assert plan.ec_paths == {}


def test_ec_d1_marks_user2_tasks_infeasible():
    plan = build_ec(example_task_set(), example_network(1), rng(0))
    assert plan.infeasible_tasks == frozenset({0, 2, 3})
    assert plan.transformed_tasks[0] is None
    assert plan.transformed_tasks[1] is not None


def test_ec_d4_routes_the_long_pair():
    plan = build_ec(example_task_set(), example_network(4), rng(0))
    assert q_count(plan) == 18
    assert set(plan.ec_paths) == {(1, 2)}
    path = plan.ec_paths[(1, 2)]
    assert path[0] == 1 and path[-1] == 2 and len(path) > 2


def test_ec_line_intermediate_count():
    """All-pairs singleton tasks on a 4-user line at D=0 need 4 extra slots."""
    line = GridNetwork(4, 1, 100.0, tuple((x, 0) for x in range(4)), 0)
    ts = TaskSet(
        n_users=4,
        tasks=tuple(
            Task(((i, j),)) for i in range(4) for j in range(i + 1, 4)
        ),
    )
    plan = build_ec(ts, line, rng(0))
    assert plan.infeasible_tasks == frozenset()
    inter = sum(len(p) - 2 for p in plan.ec_paths.values() if p is not None)
    assert inter == 4


def test_sed_ec_excludes_unroutable_second_pair():
    # after the longest pair is promised away, the second pair still exceeds
    # D and no intermediate user can bridge it
    net = GridNetwork(5, 5, 100.0, ((0, 0), (4, 4), (0, 1), (4, 3)), 4)
    ts = TaskSet(n_users=4, tasks=(Task(((0, 1), (2, 3))),))
    plan = build_sed_ec(ts, net, rng(0))
    assert plan.sed_choice == [(0, 1)]
    assert plan.infeasible_tasks == frozenset({0})
    assert q_count(plan) == 0


def test_sed_ec_example_matches_sed():
    ts = example_task_set()
    for d in (1, 2, 7):
        plan = build_sed_ec(ts, example_network(d), rng(0))
        bench = build_sed(ts, example_network(d), rng(0))
        assert plan.state == bench.state, d
        assert plan.infeasible_tasks == frozenset()


def test_build_plan_dispatch():
    ts = example_task_set()
    assert build_plan("bm", ts).setting == "bm"
    with pytest.raises(ValueError):
        build_plan("sed", ts)
    with pytest.raises(ValueError):
        build_plan("nope", ts, example_network(), rng(0))


def test_merging_sed_example_to_five():
    plan = build_sed(example_task_set(), example_network(), rng(0))
    merged = merging_algorithm(plan)
    assert q_count(merged) == 5
    assert owner_edges(merged.state) == [(0, 3), (2, 4), (2, 5), (4, 5)]


def test_merging_bm_example():
    merged = merging_algorithm(build_bm(example_task_set()))
    assert 8 <= q_count(merged) <= 16
    # user 4 holds its pairs with users 1 and 2 in separate tasks, so its
    # two qubits merge
    assert len(merged.state.owned_by(3)) == 1


def test_merging_all_single_pair_tasks_collapses_users():
    ts = TaskSet(
        n_users=3, tasks=(Task(((0, 1),)), Task(((0, 2),)), Task(((1, 2),)))
    )
    merged = merging_algorithm(build_bm(ts))
    assert all(len(merged.state.owned_by(u)) == 1 for u in range(3))
    assert q_count(merged) == 3


def test_merging_never_increases_and_is_idempotent():
    for setting in ("bm", "sed", "ec", "sed_ec"):
        plan = build_plan(setting, example_task_set(), example_network(4), rng(0))
        merged = merging_algorithm(plan)
        assert q_count(merged) <= q_count(plan)
        again = merging_algorithm(merged)
        assert again.state == merged.state


def test_plan_dict_round_trip():
    plan = merging_algorithm(
        build_ec(example_task_set(), example_network(4), rng(0))
    )
    back = plan_from_dict(plan_to_dict(plan))
    assert back.setting == plan.setting
    assert back.n_users == plan.n_users
    assert back.state == plan.state
    assert back.sed_choice == plan.sed_choice
    assert back.ec_paths == plan.ec_paths
    assert back.infeasible_tasks == plan.infeasible_tasks
    assert [g for g in back.transformed_tasks] == [
        g for g in plan.transformed_tasks
    ]
