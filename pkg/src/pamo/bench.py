"""Benchmark sweeps: generate seeded instances, run a solver, aggregate.

A suite file is YAML::

    name: empty8
    mode: rc              # mo | rc | hybrid
    k_push: inf
    time_limit: 60
    maps: [maps/empty-8-8.map]        # scenario files when mode is hybrid
    fractions: [0.1, 0.2, 0.3]
    seeds: [0, 1, 2]
    start: [0, 0]         # optional; default is opposite free corners
    goal: [7, 7]
    workers: 1
    output: out/empty8    # directory for instances/, records.jsonl, summary.*

Relative paths resolve against the suite file's directory.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import yaml

from .grid import (
    GridMap,
    Instance,
    actions_from_string,
    dump_instance,
    generate_instance,
    read_map,
    replay,
)
from .maps import corner_start_goal
from .search import INF, Limits, solve_mo, solve_rc

log = logging.getLogger(__name__)

CSV_SCHEMA = "pamo-bench-v1"
CSV_COLUMNS = [
    "schema", "map", "mode", "fraction", "k_push", "runs", "solved", "infeasible",
    "timeout", "solve_rate", "median_wall_time", "mean_wall_time", "median_expansions",
    "mean_expansions", "median_solutions", "mean_solutions", "censored",
]


class SuiteError(ValueError):
    pass


@dataclass
class BenchSuite:
    maps: list[str]
    fractions: list[float] = field(default_factory=lambda: [0.1])
    seeds: list[int] = field(default_factory=list)
    mode: str = "rc"
    k_push: float = INF
    time_limit: float = 60.0
    output: Optional[str] = None
    start: Optional[tuple[int, int]] = None
    goal: Optional[tuple[int, int]] = None
    workers: int = 1
    name: str = "suite"

    def __post_init__(self):
        if self.mode not in ("mo", "rc", "hybrid"):
            raise SuiteError(f"unknown mode {self.mode!r}")
        if len(set(self.seeds)) != len(self.seeds):
            raise SuiteError("seeds must be distinct")
        if self.time_limit <= 0:
            raise SuiteError("time_limit must be positive")
        if (self.start is None) != (self.goal is None):
            raise SuiteError("give both start and goal, or neither")


def parse_k(value) -> float:
    if value is None:
        return INF
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    k = float(value)
    if k < 0:
        raise ValueError("k_push must be non-negative")
    return int(k) if k.is_integer() else k


def load_suite(path) -> BenchSuite:
    path = Path(path)
    doc = yaml.safe_load(path.read_text())
    if not isinstance(doc, dict) or "maps" not in doc:
        raise SuiteError("suite must be a mapping with a 'maps' list")
    base = path.parent

    def resolve(p):
        return str(p if os.path.isabs(p) else base / p)

    return BenchSuite(
        maps=[resolve(m) for m in doc["maps"]],
        fractions=[float(f) for f in doc.get("fractions", [0.1])],
        seeds=[int(s) for s in doc.get("seeds", [])],
        mode=doc.get("mode", "rc"),
        k_push=parse_k(doc.get("k_push")),
        time_limit=float(doc.get("time_limit", 60.0)),
        output=resolve(doc["output"]) if doc.get("output") else None,
        start=tuple(doc["start"]) if doc.get("start") is not None else None,
        goal=tuple(doc["goal"]) if doc.get("goal") is not None else None,
        workers=int(doc.get("workers", 1)),
        name=str(doc.get("name", path.stem)),
    )


@dataclass
class RunRecord:
    instance_id: str
    mode: str
    outcome: str  # solved | infeasible | timeout
    wall_time: float
    expansions: int
    generated: int
    solution_count: int
    costs: list = field(default_factory=list)
    actions: list = field(default_factory=list)
    map: str = ""
    fraction: Optional[float] = None
    seed: Optional[int] = None
    k_push: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _k_label(k) -> str:
    return "inf" if k == INF else str(k)


def _cost_json(cost):
    return [c if isinstance(c, int) else str(c) for c in cost]


def run_instance(instance: Instance, mode: str, k_push=INF, time_limit: float = 60.0,
                 instance_id: str = "", map_name: str = "") -> RunRecord:
    limits = Limits(time=time_limit)
    if mode == "mo":
        res = solve_mo(instance, limits)
    else:
        res = solve_rc(instance, k_push, limits)
    solved = res.outcome == "solved"
    return RunRecord(
        instance_id=instance_id,
        mode=mode,
        outcome=res.outcome,
        wall_time=res.stats.wall_time,
        expansions=res.stats.expansions,
        generated=res.stats.generated,
        solution_count=len(res.solutions),
        costs=[_cost_json(s.cost) for s in res.solutions] if solved else [],
        actions=[s.action_string for s in res.solutions] if solved else [],
        map=map_name,
        fraction=instance.object_fraction,
        seed=instance.seed,
        k_push=_k_label(k_push) if mode == "rc" else None,
    )


def _run_hybrid(path: str, time_limit: float) -> RunRecord:
    from .hybrid import load_scenario, solve_hybrid

    scenario = load_scenario(Path(path).read_text())
    res = solve_hybrid(scenario, time_limit=time_limit)
    if res.success:
        outcome = "solved"
    else:
        outcome = "timeout" if res.stats.timed_out else "infeasible"
    return RunRecord(
        instance_id=scenario.name or Path(path).stem,
        mode="hybrid",
        outcome=outcome,
        wall_time=res.stats.wall_time,
        expansions=res.stats.expansions,
        generated=res.stats.generated,
        solution_count=int(res.success),
        costs=[[res.arrival_time, res.stats.pushes]] if res.success else [],
        actions=[],
        map=Path(path).name,
    )


def _job(args):
    kind = args[0]
    if kind == "hybrid":
        return _run_hybrid(*args[1:])
    _, instance, mode, k, limit, iid, map_name = args
    return run_instance(instance, mode, k, limit, iid, map_name)


def suite_jobs(suite: BenchSuite) -> list[tuple]:
    """Every run of the suite, with instances generated deterministically from the seeds."""
    if suite.mode == "hybrid":
        for p in suite.maps:
            if not Path(p).is_file():
                raise SuiteError(f"cannot read scenario {p}")
        return [("hybrid", p, suite.time_limit) for p in suite.maps]
    grids: dict[str, GridMap] = {}
    for p in suite.maps:
        try:
            grids[p] = read_map(p)
        except (OSError, ValueError) as exc:
            raise SuiteError(f"cannot read map {p}: {exc}") from exc
    jobs = []
    for p, grid in grids.items():
        if suite.start is not None:
            start, goal = suite.start, suite.goal
        else:
            start, goal = corner_start_goal(grid)
        stem = Path(p).stem
        map_ref = os.path.relpath(p, Path(suite.output) / "instances") if suite.output else Path(p).name
        for frac in suite.fractions:
            for seed in suite.seeds:
                inst = generate_instance(grid, frac, start, goal, seed, map_path=map_ref)
                iid = f"{stem}_f{frac:g}_s{seed}"
                jobs.append(("grid", inst, suite.mode, suite.k_push, suite.time_limit, iid, stem))
    return jobs


def run_suite(suite: BenchSuite) -> list[RunRecord]:
    """Run every (map, fraction, seed) of the suite; records are appended as they finish."""
    jobs = suite_jobs(suite)
    out_dir = Path(suite.output) if suite.output else None
    records_fh = None
    if out_dir is not None:
        (out_dir / "instances").mkdir(parents=True, exist_ok=True)
        for job in jobs:
            if job[0] == "grid":
                (out_dir / "instances" / f"{job[5]}.yaml").write_text(dump_instance(job[1]))
        records_fh = open(out_dir / "records.jsonl", "w")
    records = []
    try:
        if suite.workers > 1:
            with ProcessPoolExecutor(max_workers=suite.workers) as pool:
                results = pool.map(_job, jobs)
                for rec in results:
                    records.append(_emit(rec, records_fh))
        else:
            for job in jobs:
                records.append(_emit(_job(job), records_fh))
    finally:
        if records_fh is not None:
            records_fh.close()
    if out_dir is not None:
        summary, table = emit_report(records)
        (out_dir / "summary.txt").write_text(summary)
        (out_dir / "summary.csv").write_text(table)
    return records


def _emit(rec: RunRecord, fh) -> RunRecord:
    log.info("%s %s %.3fs exp=%d", rec.instance_id, rec.outcome, rec.wall_time, rec.expansions)
    if fh is not None:
        fh.write(rec.to_json() + "\n")
        fh.flush()
    return rec


def verify_records(records: Iterable[RunRecord], instances: dict[str, Instance]) -> None:
    """Replay every solved record's action strings; raise on any cost mismatch."""
    for rec in records:
        if rec.outcome != "solved" or rec.mode == "hybrid":
            continue
        inst = instances[rec.instance_id]
        for cost, acts in zip(rec.costs, rec.actions):
            _, got = replay(inst, actions_from_string(acts))
            if _cost_json(got) != cost:
                raise AssertionError(f"{rec.instance_id}: replay cost {got} != recorded {cost}")


def _stat(values, fn):
    return fn(values) if values else float("nan")


def emit_report(records: list[RunRecord]) -> tuple[str, str]:
    """Per-configuration aggregates as (human summary, CSV table).

    Wall times and expansions aggregate over every run, timeouts included;
    the ``censored`` column counts the timeouts whose values are lower bounds.
    """
    groups: dict[tuple, list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.map, r.mode, r.fraction, r.k_push), []).append(r)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    lines = []
    for (map_name, mode, frac, k), rs in sorted(groups.items(), key=lambda kv: str(kv[0])):
        n = len(rs)
        solved = sum(r.outcome == "solved" for r in rs)
        infeasible = sum(r.outcome == "infeasible" for r in rs)
        timeout = sum(r.outcome == "timeout" for r in rs)
        times = [r.wall_time for r in rs]
        exps = [r.expansions for r in rs]
        sols = [r.solution_count for r in rs]
        row = [
            CSV_SCHEMA, map_name, mode, "" if frac is None else frac, k or "", n, solved,
            infeasible, timeout, solved / n,
            _stat(times, statistics.median), _stat(times, statistics.mean),
            _stat(exps, statistics.median), _stat(exps, statistics.mean),
            _stat(sols, statistics.median), _stat(sols, statistics.mean), timeout,
        ]
        w.writerow(row)
        label = f"{map_name} mode={mode}" + (f" frac={frac:g}" if frac is not None else "")
        if k:
            label += f" K={k}"
        note = f" ({timeout} timed out; time/expansion stats are lower bounds)" if timeout else ""
        lines.append(
            f"{label}: solved {solved}/{n} (rate {solved / n:.2f}), infeasible {infeasible}, "
            f"median time {_stat(times, statistics.median):.4f}s, "
            f"median expansions {_stat(exps, statistics.median):g}, "
            f"median solutions {_stat(sols, statistics.median):g}{note}"
        )
    if not lines:
        lines.append("no runs")
    return "\n".join(lines) + "\n", buf.getvalue()
