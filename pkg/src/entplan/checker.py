"""Schedule search: can a resource state serve a task with local operations?

A task is served by finding vertex-disjoint qubit paths, one per requested
pair (minus the optional satellite pair), then measuring away everything
else in the touched components and collapsing path interiors.  Every
schedule is verified by replaying its operations through the graph rewrite
rules before it is returned, so a positive answer is always sound; a
negative answer only means this path-based strategy found nothing.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graphstate import QubitGraph, measure_x, measure_z, merge
from .planner import ResourcePlan
from .taskgen import Task, TaskSet


@dataclass
class Schedule:
    """Replayable recipe: satellite pair, chosen paths, rewrite ops."""

    sed_pair: tuple[int, int] | None
    pair_paths: dict[tuple[int, int], list[int]]
    ops: list[tuple]


@dataclass
class SuccessReport:
    satisfied: list[bool]
    schedules: list[Schedule | None]

    @property
    def n_failed(self) -> int:
        return sum(not ok for ok in self.satisfied)

    @property
    def set_failed(self) -> bool:
        return self.n_failed > 0


def _components_touching(state: QubitGraph, seeds: set[int]) -> set[int]:
    """All qubits in connected components containing any seed."""
    seen: set[int] = set()
    stack = [q for q in seeds if state.has_qubit(q)]
    while stack:
        q = stack.pop()
        if q in seen:
            continue
        seen.add(q)
        stack.extend(state.neighbors(q) - seen)
    return seen


def _paths_between(
    state: QubitGraph,
    a: int,
    b: int,
    max_paths: int = 200,
    max_expansions: int = 20_000,
) -> list[list[int]]:
    """Simple qubit paths from a qubit of user a to a qubit of user b.

    Consecutive path qubits are either joined by a state edge or co-owned
    by one user (an entanglement swap performed at task time).  Co-owner
    hops never open a path and never chain, so a path is a sequence of
    entangled links joined by swaps.  Best-first expansion emits paths in
    (length, lexicographic) order, so the caps keep the shortest ones.
    """
    found: list[list[int]] = []
    # heap entries: (length, path, last hop was a co-owner hop)
    heap: list[tuple[int, list[int], bool]] = [
        (1, [start], True) for start in state.owned_by(a)
    ]
    heapq.heapify(heap)
    expansions = 0
    while heap and len(found) < max_paths and expansions < max_expansions:
        _, path, just_swapped = heapq.heappop(heap)
        expansions += 1
        head = path[-1]
        if len(path) > 1 and not just_swapped and state.owner(head) == b:
            found.append(path)
            continue
        hops: list[tuple[int, bool]] = []
        if not just_swapped and state.owner(head) != b:
            hops += [
                (q, True)
                for q in state.owned_by(state.owner(head))
                if q not in path
            ]
        hops += [(nb, False) for nb in state.neighbors(head) if nb not in path]
        for nxt, swap in hops:
            heapq.heappush(heap, (len(path) + 1, path + [nxt], swap))
    return found


def _chain_paths(
    state: QubitGraph,
    chain: list[int],
    max_paths: int = 50,
    max_expansions: int = 5000,
) -> list[list[int]]:
    """Simple qubit paths visiting the users of `chain` in order.

    Hop rules match _paths_between, but every state-edge hop must land on a
    qubit of the next chain user, so the search stays inside the planned
    corridor.  Best-first by (length, path).
    """
    found: list[list[int]] = []
    # heap entries: (length, path, chain position, last hop was a co-owner hop)
    heap: list[tuple[int, list[int], int, bool]] = [
        (1, [q], 0, True) for q in state.owned_by(chain[0])
    ]
    heapq.heapify(heap)
    expansions = 0
    while heap and len(found) < max_paths and expansions < max_expansions:
        _, path, pos, just_swapped = heapq.heappop(heap)
        expansions += 1
        if pos == len(chain) - 1:
            found.append(path)
            continue
        head = path[-1]
        hops: list[tuple[int, int, bool]] = []
        if not just_swapped:
            hops += [
                (q, pos, True)
                for q in state.owned_by(chain[pos])
                if q not in path
            ]
        hops += [
            (nb, pos + 1, False)
            for nb in state.neighbors(head)
            if nb not in path and state.owner(nb) == chain[pos + 1]
        ]
        for nxt, npos, swap in hops:
            heapq.heappush(heap, (len(path) + 1, path + [nxt], npos, swap))
    return found


def _disjoint_assignments(
    state: QubitGraph,
    candidates: list[tuple[tuple[int, int], list[list[int]]]],
):
    """Yields path choices, one per pair, vertex-disjoint and unentangled.

    Paths that share a qubit or touch another chosen path through a state
    edge are pruned: a cross edge would entangle the carved-out pairs.
    """

    def rec(idx: int, used: set[int], blocked: set[int], chosen: dict):
        if idx == len(candidates):
            yield dict(chosen)
            return
        pair, paths = candidates[idx]
        for path in paths:
            if used.isdisjoint(path) and blocked.isdisjoint(path):
                chosen[pair] = path
                grown = set().union(*(state.neighbors(q) for q in path))
                yield from rec(
                    idx + 1, used | set(path), blocked | grown, chosen
                )
                del chosen[pair]

    yield from rec(0, set(), set(), {})


def _collapse_ops(
    state: QubitGraph, assignment: dict[tuple[int, int], list[int]]
) -> tuple[list[tuple], QubitGraph] | None:
    """Builds and applies the measurement ops for a path assignment.

    Z-measures every non-path qubit in components touched by a path, merges
    each path's interior into one qubit, and X-measures it against a path
    endpoint.  Returns None when an X helper is unavailable (edge structure
    collapsed along the way).
    """
    g = state
    path_qubits = {q for path in assignment.values() for q in path}
    touched = _components_touching(state, path_qubits)
    ops: list[tuple] = []
    for q in sorted(touched - path_qubits):
        ops.append(("Z", q))
        g = measure_z(g, q)
    for pair in sorted(assignment):
        path = assignment[pair]
        interior = path[1:-1]
        if not interior:
            continue
        head = interior[0]
        for nxt in interior[1:]:
            ops.append(("merge", head, nxt))
            g, head = merge(g, head, nxt)
        helper = None
        for end in (path[0], path[-1]):
            if g.has_edge(head, end):
                helper = end
                break
        if helper is None:
            return None
        ops.append(("X", head, helper))
        g = measure_x(g, head, helper)
    return ops, g


def _expected_after(
    state: QubitGraph, assignment: dict[tuple[int, int], list[int]]
) -> QubitGraph:
    """Untouched components verbatim plus one edge per requested pair."""
    path_qubits = {q for path in assignment.values() for q in path}
    touched = _components_touching(state, path_qubits)
    owners = {
        q: state.owner(q) for q in state.qubits() if q not in touched
    }
    edges = [
        (a, b) for a, b in state.edges() if a not in touched and b not in touched
    ]
    for path in assignment.values():
        owners[path[0]] = state.owner(path[0])
        owners[path[-1]] = state.owner(path[-1])
        edges.append((path[0], path[-1]))
    return QubitGraph(owners, edges)


def satisfy(
    state: QubitGraph,
    task: Task,
    sed_pair: tuple[int, int] | None = None,
    chain_hints: dict[tuple[int, int], list[int]] | None = None,
) -> Schedule | None:
    """Finds a replay-verified schedule serving the task, or None.

    The satellite covers at most the one given pair, which must belong to
    the task.  chain_hints maps pairs to planned user chains; hinted pairs
    try corridor-following paths before the generic enumeration.
    """
    if sed_pair is not None:
        sp = tuple(sorted(sed_pair))
        if sp not in task.pairs:
            raise ValueError(f"satellite pair {sed_pair} not part of the task")
        sed_pair = (int(sp[0]), int(sp[1]))
    remaining = [p for p in task.pairs if p != sed_pair]
    if not remaining:
        return Schedule(sed_pair, {}, [])
    candidates = []
    for pair in remaining:
        paths: list[list[int]] = []
        hint = (chain_hints or {}).get(pair)
        if hint is not None and len(hint) > 2:
            paths = _chain_paths(state, hint)
        seen = {tuple(p) for p in paths}
        paths += [
            p
            for p in _paths_between(state, pair[0], pair[1])
            if tuple(p) not in seen
        ]
        if not paths:
            return None
        candidates.append((pair, paths))
    candidates.sort(key=lambda item: (len(item[1]), item[0]))
    attempts = 0
    for assignment in _disjoint_assignments(state, candidates):
        attempts += 1
        if attempts > 20_000:
            return None
        built = _collapse_ops(state, assignment)
        if built is None:
            continue
        ops, final = built
        if final == _expected_after(state, assignment):
            return Schedule(sed_pair, assignment, ops)
    return None


def network_success(plan: ResourcePlan, ts: TaskSet) -> SuccessReport:
    """Runs satisfy per task with the plan's recorded satellite choices.

    Tasks the planner marked infeasible count as unsatisfied without a
    search.  The plan's chain choices guide the path search.
    """
    hints = {
        pair: path for pair, path in plan.ec_paths.items() if path is not None
    }
    satisfied: list[bool] = []
    schedules: list[Schedule | None] = []
    for k, task in enumerate(ts.tasks):
        if k in plan.infeasible_tasks:
            satisfied.append(False)
            schedules.append(None)
            continue
        sched = satisfy(plan.state, task, plan.sed_choice[k], hints)
        satisfied.append(sched is not None)
        schedules.append(sched)
    return SuccessReport(satisfied, schedules)


def _qubit_label(state: QubitGraph, q: int) -> str:
    """1-based owner label, letter-suffixed when the owner holds several."""
    user = state.owner(q)
    owned = state.owned_by(user)
    if len(owned) == 1:
        return str(user + 1)
    return f"{user + 1}{chr(ord('a') + owned.index(q))}"


def format_schedule(schedule: Schedule, state: QubitGraph) -> str:
    """Human notation: satellite pair first, then each rewrite op."""
    parts: list[str] = []
    if schedule.sed_pair is not None:
        a, b = schedule.sed_pair
        parts.append(f"S_{{{a + 1},{b + 1}}}")
    for op in schedule.ops:
        if op[0] == "Z":
            parts.append(f"Z_{_qubit_label(state, op[1])}")
        elif op[0] == "merge":
            parts.append(
                f"M_{{{_qubit_label(state, op[1])},{_qubit_label(state, op[2])}}}"
            )
        elif op[0] == "X":
            parts.append(
                f"X_{_qubit_label(state, op[1])}({_qubit_label(state, op[2])})"
            )
    return " ".join(parts) if parts else "(nothing to do)"
