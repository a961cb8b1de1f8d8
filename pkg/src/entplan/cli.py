"""Command-line front end: plan, check, simulate, taskgen, verify-rules.

Exit codes: 0 success, 1 unsatisfied tasks, 2 configuration or input error,
3 infeasible tasks under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import checker, harness, oracle, planner, taskgen, topology

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["users", "D"],
    "properties": {
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "width": {"type": "integer", "minimum": 1},
                "height": {"type": "integer", "minimum": 1},
                "edge_km": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "users": {
            "type": "array",
            "minItems": 2,
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "D": {"type": "integer", "minimum": 0},
        "tasks": {
            "oneOf": [
                {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 0},
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["n_tasks", "p"],
                    "properties": {
                        "n_tasks": {"type": ["integer", "null"], "minimum": 0},
                        "p": {"type": "number", "minimum": 0, "maximum": 1},
                        "seed": {"type": "integer"},
                    },
                },
            ]
        },
        "settings": {
            "type": "array",
            "minItems": 1,
            "items": {"enum": list(planner.SETTINGS)},
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "values"],
            "properties": {
                "kind": {"enum": list(harness.SWEEP_KINDS)},
                "values": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "integer"},
                },
                "trials": {"type": "integer", "minimum": 1},
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "csv": {"type": "string"},
                "summary": {"type": "string"},
            },
        },
        "seed": {"type": "integer"},
    },
}


class ConfigError(Exception):
    pass


def _load_config(path: str) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from exc
    return cfg


def _net_and_tasks(
    args: argparse.Namespace,
) -> tuple[topology.GridNetwork, taskgen.TaskSet]:
    if args.example:
        net = topology.example_network(7 if args.D is None else args.D)
        return net, taskgen.example_task_set()
    if not args.config:
        raise ConfigError("either --example or --config is required")
    cfg = _load_config(args.config)
    if args.D is not None:
        cfg = {**cfg, "D": args.D}
    net = topology.grid_from_config(cfg)
    tasks_cfg = cfg.get("tasks")
    if tasks_cfg is None:
        raise ConfigError("config has no tasks")
    if isinstance(tasks_cfg, list):
        ts = taskgen.tasks_from_json({"n_users": net.n_users, "tasks": tasks_cfg})
    else:
        seed = tasks_cfg.get("seed", cfg.get("seed", args.seed))
        n_tasks = tasks_cfg["n_tasks"]
        if n_tasks is None:
            n_tasks = net.n_users - 1
        ts = taskgen.generate_tasks(
            net.n_users,
            int(n_tasks),
            float(tasks_cfg["p"]),
            np.random.default_rng(np.random.SeedSequence([int(seed)])),
        )
    return net, ts


def _pair_label(pair: tuple[int, int]) -> str:
    return f"S_{{{pair[0] + 1},{pair[1] + 1}}}"


def cmd_plan(args: argparse.Namespace) -> int:
    net, ts = _net_and_tasks(args)
    rng = np.random.default_rng(np.random.SeedSequence([args.seed]))
    plan = planner.build_plan(args.setting, ts, net, rng)
    merged = planner.merging_algorithm(plan)
    print(f"setting={args.setting} users={net.n_users} tasks={len(ts.tasks)}")
    print(f"Q = {planner.q_count(plan)} -> {planner.q_count(merged)}")
    if any(pair is not None for pair in merged.sed_choice):
        chosen = (
            _pair_label(pair) if pair is not None else "-"
            for pair in merged.sed_choice
        )
        print("satellite pairs:", " ".join(chosen))
    for (i, j), path in sorted(merged.ec_paths.items()):
        route = (
            " -> ".join(str(u + 1) for u in path) if path is not None else "unroutable"
        )
        print(f"chain {i + 1}-{j + 1}: {route}")
    if merged.infeasible_tasks:
        print(
            "infeasible tasks:",
            ", ".join(str(k + 1) for k in sorted(merged.infeasible_tasks)),
        )
    if args.out:
        Path(args.out).write_text(
            json.dumps(planner.plan_to_dict(merged), indent=2) + "\n"
        )
    if args.strict and merged.infeasible_tasks:
        return 3
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    try:
        plan = planner.plan_from_dict(json.loads(Path(args.plan).read_text()))
        ts = taskgen.load_tasks(args.tasks)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if ts.n_users != plan.n_users:
        print(
            f"error: plan has {plan.n_users} users, tasks have {ts.n_users}",
            file=sys.stderr,
        )
        return 2
    report = checker.network_success(plan, ts)
    for k, sched in enumerate(report.schedules):
        if sched is None:
            print(f"task {k + 1}: UNSATISFIED")
        else:
            print(f"task {k + 1}: {checker.format_schedule(sched, plan.state)}")
    if report.n_failed:
        failing = [str(k + 1) for k, ok in enumerate(report.satisfied) if not ok]
        print(f"unsatisfied: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


def _scenario_from_config(cfg: dict, seed_flag: int | None) -> harness.Scenario:
    sweep = cfg.get("sweep")
    if sweep is None:
        raise ConfigError("simulate needs a sweep block")
    tasks_cfg = cfg.get("tasks")
    if not isinstance(tasks_cfg, dict):
        raise ConfigError("simulate needs a tasks generator block, not an inline list")
    seed = seed_flag if seed_flag is not None else cfg.get("seed", 0)
    n_tasks = tasks_cfg.get("n_tasks")
    return harness.Scenario(
        net=topology.grid_from_config(cfg),
        sweep=sweep["kind"],
        sweep_values=tuple(int(v) for v in sweep["values"]),
        trials_per_point=int(sweep.get("trials", 1)),
        p=float(tasks_cfg["p"]),
        settings=tuple(cfg.get("settings", planner.SETTINGS)),
        master_seed=int(seed),
        n_tasks=None if n_tasks is None else int(n_tasks),
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    sc = _scenario_from_config(cfg, args.seed)
    out_csv = args.out or cfg.get("output", {}).get("csv")
    out_summary = args.summary or cfg.get("output", {}).get("summary")
    if out_csv is None:
        raise ConfigError("no CSV output path (--out or config output.csv)")
    records = harness.run_scenario(sc, workers=args.workers)
    harness.write_csv(records, out_csv)
    if out_summary:
        harness.write_summary(records, out_summary)
    print(f"wrote {len(records)} records to {out_csv}")
    return 0


def cmd_taskgen(args: argparse.Namespace) -> int:
    if args.example:
        ts = taskgen.example_task_set()
    else:
        if args.n_users is None or args.n_tasks is None:
            raise ConfigError("taskgen needs --n-users and --n-tasks (or --example)")
        ts = taskgen.generate_tasks(
            args.n_users,
            args.n_tasks,
            args.p,
            np.random.default_rng(np.random.SeedSequence([args.seed])),
        )
    payload = json.dumps(taskgen.tasks_to_json(ts), indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n")
        print(f"wrote {len(ts.tasks)} tasks to {args.out}")
    else:
        print(payload)
    return 0


def cmd_verify_rules(args: argparse.Namespace) -> int:
    results = oracle.exhaustive_rule_sweep(args.max_vertices)
    if args.random:
        rng = np.random.default_rng(np.random.SeedSequence([args.seed]))
        extra = oracle.random_rule_sweep(args.random, rng)
        results = {
            rule: (
                results[rule][0] + extra[rule][0],
                results[rule][1] + extra[rule][1],
            )
            for rule in results
        }
    verdicts = []
    for rule in sorted(results):
        checked, passed = results[rule]
        verdicts.append(f"{rule} {'PASS' if checked == passed else 'FAIL'}")
        print(f"{rule}: {passed}/{checked} rewrites match the oracle")
    print(" ".join(verdicts))
    return 0 if all(v.endswith("PASS") for v in verdicts) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entplan",
        description="Plan and verify pre-distributed entanglement resource states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="build a resource state for a task set")
    p_plan.add_argument("--example", action="store_true", help="built-in demo data")
    p_plan.add_argument("--config", help="scenario config JSON")
    p_plan.add_argument(
        "--setting", required=True, choices=planner.SETTINGS, help="builder"
    )
    p_plan.add_argument("--D", type=int, default=None, help="distance threshold")
    p_plan.add_argument("--seed", type=int, default=0)
    p_plan.add_argument("--strict", action="store_true", help="exit 3 when infeasible")
    p_plan.add_argument("--out", help="write the merged plan JSON here")
    p_plan.set_defaults(func=cmd_plan)

    p_check = sub.add_parser("check", help="check a plan file against a tasks file")
    p_check.add_argument("plan")
    p_check.add_argument("tasks")
    p_check.set_defaults(func=cmd_check)

    p_sim = sub.add_parser("simulate", help="run a Monte-Carlo scenario")
    p_sim.add_argument("config")
    p_sim.add_argument("--seed", type=int, default=None, help="override config seed")
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--out", help="CSV output path")
    p_sim.add_argument("--summary", help="summary JSON path")
    p_sim.set_defaults(func=cmd_simulate)

    p_gen = sub.add_parser("taskgen", help="generate a tasks JSON file")
    p_gen.add_argument("--example", action="store_true")
    p_gen.add_argument("--n-users", type=int, default=None)
    p_gen.add_argument("--n-tasks", type=int, default=None)
    p_gen.add_argument("--p", type=float, default=0.8)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=cmd_taskgen)

    p_ver = sub.add_parser("verify-rules", help="oracle sweep of the rewrite rules")
    p_ver.add_argument("--max-vertices", type=int, default=5)
    p_ver.add_argument("--random", type=int, default=0, help="extra random graphs")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=cmd_verify_rules)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
