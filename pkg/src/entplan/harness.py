"""Monte-Carlo experiment engine with deterministic seeding.

Four sweep kinds mirror the experiment families: repeated task draws on a
fixed placement, random user placements, growing user counts, and growing
task-set sizes.  Every random stream is derived from (master seed, domain
tag, sweep index, trial index) alone, so records are identical regardless
of execution order or parallelism, and adding sweep points never perturbs
existing trials.

Stream layout per (sweep index vi, trial t):

- placement:  SeedSequence([seed, 1, vi])  for the positions sweep
              SeedSequence([seed, 1])      for the n_users sweep, which
              grows one nested placement chain from the template users,
              so the N-user placement extends the (N-1)-user one
- tasks:      SeedSequence([seed, 2, vi, t])
- builder s:  SeedSequence([seed, 3 + index(s), vi, t])
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .checker import network_success
from .planner import SETTINGS, build_plan, merging_algorithm, q_count
from .taskgen import generate_tasks
from .topology import GridNetwork

SWEEP_KINDS = ("task_draws", "positions", "n_users", "n_tasks")

CSV_HEADER = "sweep,trial,setting,q_pre,q_post,tasks_total,tasks_failed,set_failed,seed"


@dataclass(frozen=True)
class Scenario:
    """A full experiment description; immutable and picklable."""

    net: GridNetwork
    sweep: str
    sweep_values: tuple[int, ...]
    trials_per_point: int
    p: float
    settings: tuple[str, ...]
    master_seed: int
    n_tasks: int | None = None  # None means one fewer than the user count

    def __post_init__(self) -> None:
        if self.sweep not in SWEEP_KINDS:
            raise ValueError(f"unknown sweep kind {self.sweep!r}")
        if not self.sweep_values:
            raise ValueError("sweep_values must be nonempty")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be at least 1")
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        unknown = set(self.settings) - set(SETTINGS)
        if unknown:
            raise ValueError(f"unknown settings {sorted(unknown)}")
        if not self.settings:
            raise ValueError("settings must be nonempty")


@dataclass(frozen=True)
class ExperimentRecord:
    sweep_value: int
    trial: int
    setting: str
    q_pre: int
    q_post: int
    tasks_total: int
    tasks_failed: int
    seed: int

    def __post_init__(self) -> None:
        if self.q_post > self.q_pre:
            raise ValueError("merging may not increase the qubit count")
        if self.tasks_failed > self.tasks_total:
            raise ValueError("more failures than tasks")

    @property
    def set_failed(self) -> bool:
        return self.tasks_failed > 0


def _rng(*entropy: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(list(entropy)))


def _trial_seed(master_seed: int, vi: int, trial: int) -> int:
    words = np.random.SeedSequence([master_seed, 2, vi, trial]).generate_state(
        2, np.uint32
    )
    return int(words[0]) | int(words[1]) << 32


def _draw_placement(
    rng: np.random.Generator, net: GridNetwork, n_users: int
) -> GridNetwork:
    cells = rng.choice(net.width * net.height, size=n_users, replace=False)
    users = tuple((int(c) % net.width, int(c) // net.width) for c in cells)
    return replace(net, users=users)


def _grow_placement(
    rng: np.random.Generator, net: GridNetwork, n_users: int
) -> GridNetwork:
    """Extends (or truncates) the template placement to n_users users.

    New users land on uniformly random free cells, drawn one at a time so
    the N-user placement always extends the (N-1)-user one.
    """
    users = list(net.users[:n_users])
    free = [
        (x, y)
        for y in range(net.height)
        for x in range(net.width)
        if (x, y) not in set(users)
    ]
    while len(users) < n_users:
        users.append(free.pop(int(rng.integers(len(free)))))
    return replace(net, users=tuple(users))


def run_trial(sc: Scenario, vi: int, trial: int) -> list[ExperimentRecord]:
    """All setting records for one (sweep index, trial) cell."""
    value = sc.sweep_values[vi]
    net = sc.net
    if sc.sweep == "positions":
        net = _draw_placement(
            _rng(sc.master_seed, 1, vi), net, net.n_users
        )
    elif sc.sweep == "n_users":
        net = _grow_placement(_rng(sc.master_seed, 1), net, int(value))
    n_tasks = int(value) if sc.sweep == "n_tasks" else sc.n_tasks
    if n_tasks is None:
        n_tasks = net.n_users - 1
    ts = generate_tasks(
        net.n_users, n_tasks, sc.p, _rng(sc.master_seed, 2, vi, trial)
    )
    seed = _trial_seed(sc.master_seed, vi, trial)
    records = []
    for setting in sc.settings:
        rng = _rng(sc.master_seed, 3 + SETTINGS.index(setting), vi, trial)
        plan = build_plan(setting, ts, net, rng)
        merged = merging_algorithm(plan)
        report = network_success(merged, ts)
        records.append(
            ExperimentRecord(
                sweep_value=int(value),
                trial=trial,
                setting=setting,
                q_pre=q_count(plan),
                q_post=q_count(merged),
                tasks_total=len(ts.tasks),
                tasks_failed=report.n_failed,
                seed=seed,
            )
        )
    return records


def _run_cell(args: tuple[Scenario, int, int]) -> list[ExperimentRecord]:
    return run_trial(*args)


def run_scenario(sc: Scenario, workers: int = 1) -> list[ExperimentRecord]:
    """Every record of the scenario in canonical order.

    The order (sweep index, trial, setting) and every record value are
    independent of `workers`.
    """
    cells = [
        (sc, vi, trial)
        for vi in range(len(sc.sweep_values))
        for trial in range(sc.trials_per_point)
    ]
    if workers <= 1:
        batches = [_run_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_cell, cells, chunksize=8))
    # pool.map preserves submission order, so flattening is already the
    # canonical (sweep index, trial, setting) order.
    return [rec for batch in batches for rec in batch]


def records_to_csv(records: list[ExperimentRecord]) -> str:
    lines = [CSV_HEADER]
    for rec in records:
        lines.append(
            f"{rec.sweep_value},{rec.trial},{rec.setting},{rec.q_pre},"
            f"{rec.q_post},{rec.tasks_total},{rec.tasks_failed},"
            f"{int(rec.set_failed)},{rec.seed}"
        )
    return "\n".join(lines) + "\n"


def write_csv(records: list[ExperimentRecord], path: str | Path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8", newline="\n")


def summarize(records: list[ExperimentRecord]) -> list[dict]:
    """Per (sweep value, setting) aggregates, in record order."""
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple[int, str], list[ExperimentRecord]] = {}
    for rec in records:
        groups.setdefault((rec.sweep_value, rec.setting), []).append(rec)
    out = []
    for (value, setting), recs in groups.items():
        n = len(recs)
        out.append(
            {
                "sweep": value,
                "setting": setting,
                "n_trials": n,
                "q_pre_mean": sum(r.q_pre for r in recs) / n,
                "q_post_mean": sum(r.q_post for r in recs) / n,
                "q_post_min": min(r.q_post for r in recs),
                "q_post_max": max(r.q_post for r in recs),
                "tasks_failed_total": sum(r.tasks_failed for r in recs),
                "sets_failed_total": sum(r.set_failed for r in recs),
            }
        )
    return out


def write_summary(records: list[ExperimentRecord], path: str | Path) -> None:
    Path(path).write_text(json.dumps(summarize(records), indent=2) + "\n")
