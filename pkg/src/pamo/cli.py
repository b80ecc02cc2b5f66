"""``pamo`` command line.

Exit codes: 0 solved or completed, 1 usage or parse error, 2 infeasible,
3 timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .bench import SuiteError, emit_report, load_suite, parse_k, run_suite
from .grid import InstanceError, MapParseError, dump_instance, generate_instance, load_instance, read_map
from .maps import corner_start_goal
from .oracle import OracleConfig, OracleLimitExceeded, oracle_pareto, oracle_rc
from .search import Limits, solve_mo, solve_rc

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_TIMEOUT = 0, 1, 2, 3
RESULT_SCHEMA = "pamo-result-v1"


def _cell(text: str):
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from None
    return x, y


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(instance_path: str, map_path: str | None):
    text = Path(instance_path).read_text()
    if map_path is None:
        import yaml

        rel = (yaml.safe_load(text) or {}).get("map")
        if not rel:
            raise InstanceError("instance names no map; pass --map")
        map_path = str(Path(instance_path).parent / rel)
    grid = read_map(map_path)
    return load_instance(text, grid)


def cmd_solve(args) -> int:
    inst = _load(args.instance, args.map)
    limits = Limits(time=args.time_limit)
    if args.mode == "mo":
        res = solve_mo(inst, limits)
    else:
        res = solve_rc(inst, args.k_push, limits)
    doc = {"schema": RESULT_SCHEMA, **res.to_dict()}
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return {"solved": EXIT_OK, "infeasible": EXIT_INFEASIBLE, "timeout": EXIT_TIMEOUT}[res.outcome]


def cmd_gen(args) -> int:
    grid = read_map(args.map)
    if (args.start is None) != (args.goal is None):
        raise InstanceError("give both --start and --goal, or neither")
    start, goal = (args.start, args.goal) if args.start else corner_start_goal(grid)
    # The instance's map field is relative to wherever the instance file lands.
    map_ref = os.path.relpath(args.map, Path(args.out).parent) if args.out else args.map
    inst = generate_instance(grid, args.fraction, start, goal, args.seed, map_path=map_ref)
    _write(dump_instance(inst), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    suite = load_suite(args.suite)
    records = run_suite(suite)
    summary, _ = emit_report(records)
    sys.stdout.write(summary)
    return EXIT_OK


def cmd_hybrid(args) -> int:
    from .hybrid import load_scenario, solve_hybrid, trajectory_csv

    scenario = load_scenario(Path(args.scenario).read_text())
    res = solve_hybrid(scenario, time_limit=args.time_limit)
    if not res.success:
        sys.stderr.write(f"no trajectory found ({res.stats})\n")
        return EXIT_TIMEOUT if res.stats.timed_out else EXIT_INFEASIBLE
    _write(trajectory_csv(scenario, res.trajectory), args.out)
    sys.stderr.write(
        f"arrival time {res.arrival_time:g} s, {res.stats.expansions} expansions, "
        f"{res.stats.pushes} pushing primitives\n"
    )
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load(args.instance, args.map)
    cfg = OracleConfig(max_states=args.max_states)
    if args.k_push is None:
        sols = oracle_pareto(inst, cfg)
        doc = {"mode": "pareto"}
    else:
        sol = oracle_rc(inst, args.k_push, cfg)
        sols = [sol] if sol else []
        doc = {"mode": "rc", "k_push": str(args.k_push)}
    from .grid import actions_to_string

    doc["schema"] = RESULT_SCHEMA
    doc["solutions"] = [
        {"cost": [c if isinstance(c, int) else str(c) for c in s.cost],
         "actions": actions_to_string(s.actions)}
        for s in sols
    ]
    doc["outcome"] = "solved" if sols else "infeasible"
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK if sols else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pamo", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="bi-objective front or push-budgeted shortest path")
    s.add_argument("--map", help="map file (default: the instance's map field)")
    s.add_argument("--instance", required=True)
    s.add_argument("--mode", choices=("mo", "rc"), default="mo")
    s.add_argument("--k-push", type=parse_k, default=float("inf"))
    s.add_argument("--time-limit", type=float, default=60.0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="random instance on a map")
    g.add_argument("--map", required=True)
    g.add_argument("--fraction", type=float, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--start", type=_cell)
    g.add_argument("--goal", type=_cell)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", required=True)
    b.set_defaults(func=cmd_bench)

    h = sub.add_parser("hybrid", help="hybrid-state planning on a scenario file")
    h.add_argument("--scenario", required=True)
    h.add_argument("--time-limit", type=float, default=60.0)
    h.add_argument("--out")
    h.set_defaults(func=cmd_hybrid)

    o = sub.add_parser("oracle", help="exhaustive front (or budgeted optimum with --k-push)")
    o.add_argument("--instance", required=True)
    o.add_argument("--map")
    o.add_argument("--k-push", type=parse_k)
    o.add_argument("--max-states", type=int, default=5_000_000)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, MapParseError, InstanceError, SuiteError, OracleLimitExceeded, ValueError) as exc:
        sys.stderr.write(f"pamo {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
