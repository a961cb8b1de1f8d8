"""Task model and random task generation.

A task asks the network for a set of simultaneous EPR pairs between users;
no user may appear in more than one pair of a task, so a task is a matching
on the user set.  Task sets are ordered lists of tasks over a common user
count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .multigraph import UserGraph


def _norm_pair(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError(f"task pair ({i}, {j}) is a self-pair")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Task:
    """A matching of user pairs, stored sorted for determinism."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        norm = tuple(sorted(_norm_pair(int(i), int(j)) for i, j in self.pairs))
        object.__setattr__(self, "pairs", norm)
        seen: set[int] = set()
        for i, j in norm:
            if i < 0:
                raise ValueError(f"negative user index in pair ({i}, {j})")
            if i in seen or j in seen:
                raise ValueError("task is not a matching: a user repeats")
            seen.add(i)
            seen.add(j)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def users(self) -> set[int]:
        return {u for pair in self.pairs for u in pair}

    def as_user_graph(self, n_users: int) -> UserGraph:
        return UserGraph(n_users, self.pairs)


@dataclass(frozen=True)
class TaskSet:
    n_users: int
    tasks: tuple[Task, ...]

    def __post_init__(self) -> None:
        if self.n_users < 2:
            raise ValueError("a network needs at least two users")
        object.__setattr__(self, "tasks", tuple(self.tasks))
        for k, task in enumerate(self.tasks):
            for i, j in task.pairs:
                if j >= self.n_users:
                    raise ValueError(
                        f"task {k} references user {j} >= n_users={self.n_users}"
                    )

    def __len__(self) -> int:
        return len(self.tasks)

    def as_user_graphs(self) -> list[UserGraph]:
        return [t.as_user_graph(self.n_users) for t in self.tasks]


def example_task_set() -> TaskSet:
    """The fixed six-user, four-task demonstration set (0-based users)."""
    return TaskSet(
        n_users=6,
        tasks=(
            Task(((0, 1), (2, 5))),
            Task(((0, 4),)),
            Task(((1, 3), (2, 4))),
            Task(((0, 3), (1, 2), (4, 5))),
        ),
    )


def generate_tasks(
    n_users: int, n_tasks: int, p: float, rng: np.random.Generator
) -> TaskSet:
    """Draws tasks whose sizes are Binomial(floor(N/2), p) matchings.

    Each task draws its size, then pairs the first 2*size entries of a fresh
    random permutation of the users, which is uniform over matchings of that
    size.  The permutation is drawn even for empty tasks so the stream layout
    is independent of draw outcomes.
    """
    if n_users < 2:
        raise ValueError("need at least two users")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if n_tasks < 0:
        raise ValueError("n_tasks must be non-negative")
    max_pairs = n_users // 2
    tasks = []
    for _ in range(n_tasks):
        size = int(rng.binomial(max_pairs, p))
        perm = rng.permutation(n_users)
        pairs = tuple(
            _norm_pair(int(perm[2 * k]), int(perm[2 * k + 1])) for k in range(size)
        )
        tasks.append(Task(pairs))
    return TaskSet(n_users, tuple(tasks))


def tasks_to_json(ts: TaskSet) -> dict:
    return {
        "n_users": ts.n_users,
        "tasks": [[list(pair) for pair in task.pairs] for task in ts.tasks],
    }


def tasks_from_json(data: dict) -> TaskSet:
    tasks = tuple(
        Task(tuple((int(i), int(j)) for i, j in pairs)) for pairs in data["tasks"]
    )
    return TaskSet(int(data["n_users"]), tasks)


def save_tasks(ts: TaskSet, path: str | Path) -> None:
    Path(path).write_text(json.dumps(tasks_to_json(ts), indent=2) + "\n")


def load_tasks(path: str | Path) -> TaskSet:
    return tasks_from_json(json.loads(Path(path).read_text()))
