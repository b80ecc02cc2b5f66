"""Label-setting best-first search over (robot, objects) states.

One engine covers both problems: the bi-objective front over
(arrival time, pushes), and minimum time under a push budget.  Costs are
scaled to exact integers before the search starts, so every dominance test
is exact.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
import math
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .grid import (
    ActionStep,
    Cell,
    GridMap,
    Instance,
    WorldState,
    actions_to_string,
    exact,
    state_key,
    successors,
)

INF = math.inf


def dominates(a, b) -> bool:
    """``a`` is no worse than ``b`` in both components and differs somewhere."""
    return a[0] <= b[0] and a[1] <= b[1] and (a[0], a[1]) != (b[0], b[1])


def weakly_dominates(a, b) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


class FrontierSet:
    """Pairwise non-dominated cost pairs at one state.

    Kept sorted by the first component (strictly increasing), which forces the
    second component to be strictly decreasing.
    """

    __slots__ = ("g1", "g2")

    def __init__(self, entries=()):
        self.g1: list = []
        self.g2: list = []
        for e in entries:
            if not self.check(e):
                self.update(e)

    def __len__(self):
        return len(self.g1)

    def __iter__(self):
        return iter(zip(self.g1, self.g2))

    def __repr__(self):
        return f"FrontierSet({list(self)})"

    def entries(self) -> list[tuple]:
        return list(zip(self.g1, self.g2))

    def check(self, g) -> bool:
        """True if some entry is component-wise no larger than ``g`` (prune)."""
        i = bisect.bisect_right(self.g1, g[0]) - 1
        # Among entries with g1' <= g1 the last one has the smallest g2'.
        return i >= 0 and self.g2[i] <= g[1]

    def update(self, g) -> None:
        """Insert ``g``, dropping entries it dominates.  Caller ensures ``check(g)`` is False."""
        lo = bisect.bisect_left(self.g1, g[0])
        hi = lo
        n = len(self.g1)
        while hi < n and self.g2[hi] >= g[1]:
            hi += 1
        self.g1[lo:hi] = [g[0]]
        self.g2[lo:hi] = [g[1]]

    def is_well_formed(self) -> bool:
        return all(a < b for a, b in zip(self.g1, self.g1[1:])) and all(
            a > b for a, b in zip(self.g2, self.g2[1:])
        )


def frontier_check(g, frontier: FrontierSet) -> bool:
    return frontier.check(g)


def update_frontier(g, frontier: FrontierSet) -> None:
    frontier.update(g)


def solution_check_mo(f, goal_frontier: FrontierSet) -> bool:
    return goal_frontier.check(f)


def solution_check_rc(f, k_push) -> bool:
    return f[1] > k_push


def backward_dijkstra(grid: GridMap, goal: Cell) -> np.ndarray:
    """Move-count distance from every cell to ``goal`` among static obstacles only.

    Unit edge weights make this a breadth-first sweep.  Returns a float array
    indexed ``[y, x]`` with ``inf`` for unreachable cells.
    """
    if grid.is_static(goal):
        raise ValueError(f"goal {goal} is a static obstacle")
    dist = np.full((grid.height, grid.width), np.inf)
    gx, gy = goal
    dist[gy, gx] = 0
    queue = deque([goal])
    while queue:
        x, y = queue.popleft()
        d = dist[y, x] + 1
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if not grid.is_static((nx, ny)) and dist[ny, nx] == np.inf:
                dist[ny, nx] = d
                queue.append((nx, ny))
    return dist


def heuristic(state: WorldState, dist: np.ndarray, step=(1, 0)):
    """``(d*(robot) * step[0], d*(robot) * step[1])``; objects are ignored.

    ``step`` is the cheapest per-action cost in each component, which is
    ``(1, 0)`` for the default move/push costs.
    """
    x, y = state.robot
    d = dist[y, x]
    if d == np.inf:
        return (INF, INF)
    d = int(d)
    return (d * step[0], d * step[1])


@dataclass
class Limits:
    time: float | None = None
    expansions: int | None = None


@dataclass
class SearchStats:
    expansions: int = 0
    generated: int = 0
    pruned_frontier: int = 0
    pruned_solution: int = 0
    wall_time: float = 0.0
    timed_out: bool = False

    def to_dict(self) -> dict:
        return {
            "expansions": self.expansions,
            "generated": self.generated,
            "pruned_frontier": self.pruned_frontier,
            "pruned_solution": self.pruned_solution,
            "wall_time": round(self.wall_time, 6),
            "timed_out": self.timed_out,
        }


@dataclass
class Solution:
    cost: tuple
    actions: list[ActionStep]

    @property
    def action_string(self) -> str:
        return actions_to_string(self.actions)


@dataclass
class SearchResult:
    mode: str
    solutions: list[Solution]
    stats: SearchStats
    k_push: float | None = None

    @property
    def completed(self) -> bool:
        return not self.stats.timed_out

    @property
    def costs(self) -> list[tuple]:
        return [s.cost for s in self.solutions]

    @property
    def outcome(self) -> str:
        if self.solutions and (self.completed or self.mode == "rc"):
            return "solved"
        if self.stats.timed_out:
            return "timeout"
        return "infeasible"

    def to_dict(self) -> dict:
        doc = {
            "mode": self.mode,
            "outcome": self.outcome,
            "solutions": [
                {"cost": [_num_out(c) for c in s.cost], "actions": s.action_string}
                for s in self.solutions
            ],
            "stats": self.stats.to_dict(),
        }
        if self.mode == "rc":
            doc["k_push"] = "inf" if self.k_push == INF else _num_out(self.k_push)
        return doc


def _num_out(c):
    if isinstance(c, Fraction):
        return str(c)
    return c


class Label:
    __slots__ = ("key", "state", "g", "f", "parent", "action")

    def __init__(self, key, state, g, f, parent=None, action=None):
        self.key = key
        self.state = state
        self.g = g
        self.f = f
        self.parent = parent
        self.action = action

    def path(self) -> list[ActionStep]:
        actions = []
        node = self
        while node.parent is not None:
            actions.append(node.action)
            node = node.parent
        actions.reverse()
        return actions

    def __repr__(self):
        return f"Label(robot={self.state.robot}, g={self.g}, f={self.f})"


def _scales(instance: Instance) -> tuple[int, int]:
    out = []
    for i in range(2):
        dens = [Fraction(instance.cost_move[i]).denominator, Fraction(instance.cost_push[i]).denominator]
        out.append(math.lcm(*dens))
    return tuple(out)


class PamoSearch:
    """Best-first search with per-state frontier sets.

    ``mode`` is ``"mo"`` for the full cost-unique Pareto front or ``"rc"`` for
    the minimum-time path with at most ``k_push`` of the second resource.
    ``on_expand`` is called with every label that reaches the successor loop.
    """

    def __init__(
        self,
        instance: Instance,
        mode: str = "mo",
        k_push=INF,
        limits: Limits | None = None,
        on_expand: Optional[Callable[[Label], None]] = None,
    ):
        if mode not in ("mo", "rc"):
            raise ValueError(f"unknown mode {mode!r}")
        if k_push < 0:
            raise ValueError("k_push must be non-negative")
        self.instance = instance
        self.mode = mode
        self.k_push = k_push
        self.limits = limits or Limits()
        self.on_expand = on_expand
        self.scale = _scales(instance)
        s1, s2 = self.scale
        self.cost_move = (int(instance.cost_move[0] * s1), int(instance.cost_move[1] * s2))
        self.cost_push = (int(instance.cost_push[0] * s1), int(instance.cost_push[1] * s2))
        self.k_scaled = k_push if k_push == INF else Fraction(k_push) * s2
        self.step = (
            min(self.cost_move[0], self.cost_push[0]),
            min(self.cost_move[1], self.cost_push[1]),
        )
        self.dist = backward_dijkstra(instance.map, instance.goal)
        self.frontiers: dict[bytes, FrontierSet] = {}
        self.goal_frontier = FrontierSet()
        self.solutions: list[Label] = []
        self.stats = SearchStats()

    def h(self, state: WorldState):
        return heuristic(state, self.dist, self.step)

    def _pruned(self, label: Label) -> bool:
        front = self.frontiers.get(label.key)
        if front is not None and front.check(label.g):
            self.stats.pruned_frontier += 1
            return True
        if self.mode == "mo":
            hit = self.goal_frontier.check(label.f)
        else:
            hit = solution_check_rc(label.f, self.k_scaled)
        if hit:
            self.stats.pruned_solution += 1
        return hit

    def run(self) -> SearchResult:
        t0 = time.perf_counter()
        deadline = None if self.limits.time is None else t0 + self.limits.time
        max_exp = self.limits.expansions
        goal = self.instance.goal
        grid = self.instance.map
        counter = itertools.count()
        stats = self.stats

        s0 = self.instance.initial_state
        h0 = self.h(s0)
        open_list = []
        if h0[0] != INF:
            root = Label(state_key(s0), s0, (0, 0), h0)
            # Negated counter gives last-in-first-out among equal f-vectors.
            heapq.heappush(open_list, (h0[0], h0[1], -next(counter), root))

        while open_list:
            *_, label = heapq.heappop(open_list)
            if self._pruned(label):
                continue
            front = self.frontiers.get(label.key)
            if front is None:
                front = self.frontiers[label.key] = FrontierSet()
            front.update(label.g)
            if label.state.robot == goal:
                self.goal_frontier.update(label.g)
                self.solutions.append(label)
                if self.mode == "rc":
                    break
                continue
            if deadline is not None and time.perf_counter() > deadline:
                stats.timed_out = True
                break
            if max_exp is not None and stats.expansions >= max_exp:
                stats.timed_out = True
                break
            stats.expansions += 1
            if self.on_expand is not None:
                self.on_expand(label)
            g1, g2 = label.g
            for nxt, action in successors(label.state, grid):
                c = self.cost_push if action.push else self.cost_move
                g = (g1 + c[0], g2 + c[1])
                h = self.h(nxt)
                stats.generated += 1
                if h[0] == INF:
                    continue
                child = Label(state_key(nxt), nxt, g, (g[0] + h[0], g[1] + h[1]), label, action)
                if self._pruned(child):
                    continue
                heapq.heappush(open_list, (child.f[0], child.f[1], -next(counter), child))

        stats.wall_time = time.perf_counter() - t0
        return SearchResult(
            mode=self.mode,
            solutions=[Solution(self.unscale(l.g), l.path()) for l in self.solutions],
            stats=stats,
            k_push=self.k_push if self.mode == "rc" else None,
        )

    def unscale(self, g) -> tuple:
        return (exact(Fraction(g[0], self.scale[0])), exact(Fraction(g[1], self.scale[1])))


def solve_mo(instance: Instance, limits: Limits | None = None, **kw) -> SearchResult:
    """Cost-unique Pareto front over (arrival time, pushes)."""
    return PamoSearch(instance, "mo", limits=limits, **kw).run()


def solve_rc(instance: Instance, k_push=INF, limits: Limits | None = None, **kw) -> SearchResult:
    """Minimum-time path whose push total stays within ``k_push``."""
    return PamoSearch(instance, "rc", k_push=k_push, limits=limits, **kw).run()
