"""Hybrid-state best-first search over robot and object poses."""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .dynamics import Control, angle_diff, wrap_angle
from .scenario import HybridWorldState, Scenario
from .simulator import Simulator, quasi_static_step


def hybrid_cell(state: HybridWorldState, scenario: Scenario) -> tuple[int, ...]:
    """Integer cell indices of the robot pose followed by every object pose."""
    dx, dy, dth = scenario.resolution
    key = []
    for p in (state.robot, *state.objects):
        key.append(math.floor(p.x / dx))
        key.append(math.floor(p.y / dy))
        key.append(math.floor(wrap_angle(p.theta) / dth))
    return tuple(key)


def reached_goal(state: HybridWorldState, scenario: Scenario) -> bool:
    tx, ty, tth = scenario.goal_tolerance
    r, g = state.robot, scenario.goal
    return abs(r.x - g.x) <= tx and abs(r.y - g.y) <= ty and abs(angle_diff(r.theta, g.theta)) <= tth


@dataclass
class HybridStats:
    expansions: int = 0
    generated: int = 0
    pruned: int = 0
    invalid: int = 0
    pushes: int = 0
    wall_time: float = 0.0
    timed_out: bool = False


@dataclass
class HybridResult:
    trajectory: Optional[list[tuple[Control, HybridWorldState]]]
    stats: HybridStats
    steps: int = 0
    dt: float = 0.0
    # Retained (steps, heuristic) per visited cell.
    cell_ranks: dict = field(default_factory=dict, repr=False)

    @property
    def success(self) -> bool:
        return self.trajectory is not None

    @property
    def arrival_time(self) -> Optional[float]:
        return None if self.trajectory is None else self.steps * self.dt

    @property
    def controls(self) -> list[Control]:
        return [u for u, _ in self.trajectory or ()]


class _Node:
    __slots__ = ("state", "steps", "parent", "control", "cell", "rank")

    def __init__(self, state, steps, parent, control, cell, h):
        self.state = state
        self.steps = steps
        self.parent = parent
        self.control = control
        self.cell = cell
        # Cell ownership order: fewer steps, then closer to the goal.
        self.rank = (steps, h)


def solve_hybrid(
    scenario: Scenario,
    time_limit: float | None = None,
    max_expansions: int | None = None,
    simulator: Simulator = quasi_static_step,
    on_generate=None,
) -> HybridResult:
    """Minimum-time search over motion primitives, one retained state per cell.

    Cost is elapsed time, counted in whole primitives.  The heuristic is the
    straight-line distance to the goal position over the fastest speed in the
    control set; objects and heading are ignored.  Termination is on the first
    popped state within the goal tolerance.  The per-cell pruning gives up
    completeness and optimality.  ``on_generate(cell, steps)`` sees every
    valid successor before pruning.
    """
    t0 = time.perf_counter()
    deadline = None if time_limit is None else t0 + time_limit
    dt = scenario.dt
    v_max = scenario.v_max
    gx, gy = scenario.goal.x, scenario.goal.y
    stats = HybridStats()

    def h(state):
        if v_max == 0:
            return 0.0
        return math.hypot(state.robot.x - gx, state.robot.y - gy) / v_max

    s0 = scenario.initial_state
    root = _Node(s0, 0, None, None, hybrid_cell(s0, scenario), h(s0))
    best = {root.cell: root.rank}
    tie = itertools.count()
    heap = [(h(s0), -next(tie), root)]
    goal_node = None
    while heap:
        _, _, node = heapq.heappop(heap)
        if best[node.cell] < node.rank:
            continue
        if reached_goal(node.state, scenario):
            goal_node = node
            break
        if deadline is not None and time.perf_counter() > deadline:
            stats.timed_out = True
            break
        if max_expansions is not None and stats.expansions >= max_expansions:
            stats.timed_out = True
            break
        stats.expansions += 1
        steps = node.steps + 1
        for u in scenario.controls:
            nxt = simulator(node.state, u, dt, scenario)
            if nxt is None:
                stats.invalid += 1
                continue
            stats.generated += 1
            cell = hybrid_cell(nxt, scenario)
            if on_generate is not None:
                on_generate(cell, steps)
            child = _Node(nxt, steps, node, u, cell, h(nxt))
            held = best.get(cell)
            if held is not None and held <= child.rank:
                stats.pruned += 1
                continue
            best[cell] = child.rank
            heapq.heappush(heap, (steps * dt + child.rank[1], -next(tie), child))

    stats.wall_time = time.perf_counter() - t0
    if goal_node is None:
        return HybridResult(None, stats, dt=dt, cell_ranks=best)
    traj = []
    node = goal_node
    while node.parent is not None:
        traj.append((node.control, node.state))
        node = node.parent
    traj.reverse()
    stats.pushes = sum(
        1 for (_, a), (_, b) in zip([(None, s0)] + traj, traj) if a.objects != b.objects
    )
    return HybridResult(traj, stats, steps=goal_node.steps, dt=dt, cell_ranks=best)


def replay_controls(
    scenario: Scenario,
    controls,
    simulator: Simulator = quasi_static_step,
    trace: Optional[list] = None,
) -> list[HybridWorldState]:
    """Re-simulate a control sequence from the start; raises if any step is invalid."""
    state = scenario.initial_state
    out = []
    for k, u in enumerate(controls):
        state = simulator(state, u, scenario.dt, scenario, trace)
        if state is None:
            raise ValueError(f"control {k} ({u}) is invalid on replay")
        out.append(state)
    return out
