"""Resource-state builders and the qubit-merging reduction.

Four builders turn a task set into a stored resource state:

- ``bm``      benchmark: one EPR pair per distinct required user pair,
              realizing the union adjacency matrix directly.
- ``sed``     satellite-aided: each task's longest-distance pair is promised
              to an on-demand satellite link and dropped from storage.
- ``ec``      distance-constrained: pairs farther apart than the network
              threshold are replaced by chains of allowed links through
              intermediate users.
- ``sed_ec``  satellite removal first, then chain replacement.

The merging reduction then fuses pairs of qubits stored at one user whenever
the simultaneous-adjacency criteria prove no task can need them both at
once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .graphstate import QubitGraph, merge
from .multigraph import (
    UserGraph,
    restricted_simultaneous,
    simultaneous_adjacency,
    union_adjacency,
)
from .taskgen import TaskSet
from .topology import GridNetwork

SETTINGS = ("bm", "sed", "ec", "sed_ec")


@dataclass
class ResourcePlan:
    """A built resource state plus every decision that shaped it.

    transformed_tasks aligns with the input task list; an entry is None when
    the task cannot be realized under the distance threshold.  ec_paths maps
    each over-threshold user pair to its chosen user chain (None when no
    chain exists).
    """

    setting: str
    n_users: int
    state: QubitGraph
    transformed_tasks: list[UserGraph | None]
    sed_choice: list[tuple[int, int] | None]
    ec_paths: dict[tuple[int, int], list[int] | None] = field(default_factory=dict)
    infeasible_tasks: frozenset[int] = frozenset()


def q_count(obj: ResourcePlan | QubitGraph) -> int:
    """Stored-qubit count of a plan or a raw state."""
    state = obj.state if isinstance(obj, ResourcePlan) else obj
    return state.n_qubits


def _state_from_union(union: np.ndarray) -> QubitGraph:
    """One EPR pair (two fresh qubits, one edge) per unit of multiplicity."""
    owners: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    qid = 0
    n = union.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(int(union[i, j])):
                owners[qid] = i
                owners[qid + 1] = j
                edges.append((qid, qid + 1))
                qid += 2
    return QubitGraph(owners, edges)


def _union_state(graphs: list[UserGraph | None], n_users: int) -> QubitGraph:
    present = [g for g in graphs if g is not None]
    if not present:
        return QubitGraph({})
    return _state_from_union(union_adjacency(present))


def build_bm(ts: TaskSet) -> ResourcePlan:
    """Benchmark state: the union adjacency realized as disjoint EPR pairs."""
    transformed: list[UserGraph | None] = list(ts.as_user_graphs())
    return ResourcePlan(
        setting="bm",
        n_users=ts.n_users,
        state=_union_state(transformed, ts.n_users),
        transformed_tasks=transformed,
        sed_choice=[None] * len(ts.tasks),
    )


def _sed_reduce(
    ts: TaskSet, net: GridNetwork, rng: np.random.Generator
) -> tuple[list[tuple[int, int] | None], list[UserGraph]]:
    """Drops one longest-distance pair per nonempty task (ties by rng)."""
    choices: list[tuple[int, int] | None] = []
    reduced: list[UserGraph] = []
    for task in ts.tasks:
        if not task.pairs:
            choices.append(None)
            reduced.append(UserGraph(ts.n_users))
            continue
        longest = max(net.user_distance(i, j) for i, j in task.pairs)
        ties = sorted(
            pair for pair in task.pairs if net.user_distance(*pair) == longest
        )
        chosen = ties[int(rng.integers(len(ties)))]
        choices.append(chosen)
        reduced.append(
            UserGraph(ts.n_users, [p for p in task.pairs if p != chosen])
        )
    return choices, reduced


def build_sed(ts: TaskSet, net: GridNetwork, rng: np.random.Generator) -> ResourcePlan:
    """Satellite-aided state: longest pair of each task left to the satellite."""
    choices, reduced = _sed_reduce(ts, net, rng)
    transformed: list[UserGraph | None] = list(reduced)
    return ResourcePlan(
        setting="sed",
        n_users=ts.n_users,
        state=_union_state(transformed, ts.n_users),
        transformed_tasks=transformed,
        sed_choice=choices,
    )


def _route_tasks(
    graphs: list[UserGraph],
    net: GridNetwork,
    rng: np.random.Generator,
) -> tuple[list[UserGraph | None], dict[tuple[int, int], list[int] | None], frozenset[int]]:
    """Replaces over-threshold pairs by user chains, shared across tasks.

    Chains are computed once per distinct over-threshold pair of the union
    support, in lexicographic pair order so the rng stream is well defined.
    A task containing an unroutable pair becomes None.  Chain edges
    accumulate as multiplicities when one task reuses a link.
    """
    support = sorted({pair for g in graphs for pair in g.support()})
    ec_paths: dict[tuple[int, int], list[int] | None] = {}
    for i, j in support:
        if net.user_distance(i, j) > net.max_link_distance:
            ec_paths[(i, j)] = net.constrained_path(i, j, rng)
    transformed: list[UserGraph | None] = []
    infeasible: set[int] = set()
    for k, g in enumerate(graphs):
        edges: list[tuple[int, int]] = []
        ok = True
        for (i, j), m in g.items():
            path = ec_paths.get((i, j))
            if (i, j) not in ec_paths:
                edges.extend([(i, j)] * m)
            elif path is None:
                ok = False
                break
            else:
                edges.extend(
                    (a, b) for _ in range(m) for a, b in zip(path, path[1:])
                )
        if ok:
            transformed.append(UserGraph(g.n_users, edges))
        else:
            transformed.append(None)
            infeasible.add(k)
    return transformed, ec_paths, frozenset(infeasible)


def build_ec(ts: TaskSet, net: GridNetwork, rng: np.random.Generator) -> ResourcePlan:
    """Distance-constrained state: long pairs become chains of allowed links."""
    transformed, ec_paths, infeasible = _route_tasks(ts.as_user_graphs(), net, rng)
    return ResourcePlan(
        setting="ec",
        n_users=ts.n_users,
        state=_union_state(transformed, ts.n_users),
        transformed_tasks=transformed,
        sed_choice=[None] * len(ts.tasks),
        ec_paths=ec_paths,
        infeasible_tasks=infeasible,
    )


def build_sed_ec(
    ts: TaskSet, net: GridNetwork, rng: np.random.Generator
) -> ResourcePlan:
    """Satellite removal first, then chain replacement on what remains."""
    choices, reduced = _sed_reduce(ts, net, rng)
    transformed, ec_paths, infeasible = _route_tasks(reduced, net, rng)
    return ResourcePlan(
        setting="sed_ec",
        n_users=ts.n_users,
        state=_union_state(transformed, ts.n_users),
        transformed_tasks=transformed,
        sed_choice=choices,
        ec_paths=ec_paths,
        infeasible_tasks=infeasible,
    )


def build_plan(
    setting: str,
    ts: TaskSet,
    net: GridNetwork | None = None,
    rng: np.random.Generator | None = None,
) -> ResourcePlan:
    """Dispatch by setting name; bm needs neither network nor rng."""
    if setting == "bm":
        return build_bm(ts)
    if net is None or rng is None:
        raise ValueError(f"setting {setting!r} needs a network and an rng")
    if setting == "sed":
        return build_sed(ts, net, rng)
    if setting == "ec":
        return build_ec(ts, net, rng)
    if setting == "sed_ec":
        return build_sed_ec(ts, net, rng)
    raise ValueError(f"unknown setting {setting!r}")


def _incident_user_pairs(state: QubitGraph, qubits: tuple[int, ...]) -> set[tuple[int, int]]:
    pairs: set[tuple[int, int]] = set()
    for q in qubits:
        uq = state.owner(q)
        for nb in state.neighbors(q):
            un = state.owner(nb)
            if un == uq:
                # Same-owner edges never arise from the builders; such an
                # edge has no user pair, so refuse the merge outright.
                return {(-1, -1)}
            pairs.add((uq, un) if uq < un else (un, uq))
    return pairs


def _may_merge(
    state: QubitGraph,
    tasks: list[UserGraph],
    sim: np.ndarray,
    q1: int,
    q2: int,
) -> bool:
    """The two merge criteria on the simultaneous-adjacency matrix.

    Criterion 1: every user pair carried by an edge at either qubit has
    simultaneous entry exactly 1, so no task ever needs two of those links
    at once.  Criterion 2 retries with per-task totals restricted to the
    window of user pairs carried by edges at the two qubits' neighbors.
    """
    if state.has_edge(q1, q2):
        return False
    incident = _incident_user_pairs(state, (q1, q2))
    if (-1, -1) in incident:
        return False
    if all(sim[i, j] == 1 for i, j in incident):
        return True
    window = _incident_user_pairs(
        state, tuple(state.neighbors(q1) | state.neighbors(q2))
    )
    if (-1, -1) in window:
        return False
    restricted = restricted_simultaneous(tasks, window)
    return all(restricted[i, j] == 1 for i, j in incident)


def merging_algorithm(plan: ResourcePlan) -> ResourcePlan:
    """Fuses same-user qubit pairs wherever the merge criteria allow.

    Deterministic fixpoint scan: users ascending, qubit pairs in
    lexicographic id order, full restart after every merge, stop on a clean
    pass.  The qubit count never increases.
    """
    tasks = [g for g in plan.transformed_tasks if g is not None]
    state = plan.state.copy()
    if not tasks or state.n_qubits == 0:
        return replace(plan, state=state)
    sim = simultaneous_adjacency(tasks)
    merged = True
    while merged:
        merged = False
        for user in range(plan.n_users):
            qs = state.owned_by(user)
            for q1, q2 in itertools.combinations(qs, 2):
                if _may_merge(state, tasks, sim, q1, q2):
                    state, _ = merge(state, q1, q2)
                    merged = True
                    break
            if merged:
                break
    return replace(plan, state=state)


def plan_to_dict(plan: ResourcePlan) -> dict:
    """JSON-ready plan form; lossless round-trip via plan_from_dict."""
    return {
        "setting": plan.setting,
        "n_users": plan.n_users,
        "state": plan.state.to_dict(),
        "transformed_tasks": [
            None if g is None else [[i, j, m] for (i, j), m in g.items()]
            for g in plan.transformed_tasks
        ],
        "sed_choice": [
            None if pair is None else list(pair) for pair in plan.sed_choice
        ],
        "ec_paths": {
            f"{i},{j}": path for (i, j), path in sorted(plan.ec_paths.items())
        },
        "infeasible_tasks": sorted(plan.infeasible_tasks),
    }


def plan_from_dict(data: dict) -> ResourcePlan:
    n_users = int(data["n_users"])
    transformed: list[UserGraph | None] = []
    for entry in data["transformed_tasks"]:
        if entry is None:
            transformed.append(None)
        else:
            transformed.append(
                UserGraph.from_multiplicities(
                    n_users, {(int(i), int(j)): int(m) for i, j, m in entry}
                )
            )
    ec_paths: dict[tuple[int, int], list[int] | None] = {}
    for key, path in data["ec_paths"].items():
        i, j = key.split(",")
        ec_paths[(int(i), int(j))] = None if path is None else [int(v) for v in path]
    return ResourcePlan(
        setting=str(data["setting"]),
        n_users=n_users,
        state=QubitGraph.from_dict(data["state"]),
        transformed_tasks=transformed,
        sed_choice=[
            None if pair is None else (int(pair[0]), int(pair[1]))
            for pair in data["sed_choice"]
        ],
        ec_paths=ec_paths,
        infeasible_tasks=frozenset(int(k) for k in data["infeasible_tasks"]),
    )
