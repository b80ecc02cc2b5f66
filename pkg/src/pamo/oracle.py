"""Exhaustive ground truth for small instances.

Nothing here shares code with :mod:`pamo.search` beyond the grid transition
function.  ``oracle_pareto`` is an uninformed label-correcting sweep over the
whole reachable state space; ``oracle_rc`` is a uniform-cost sweep over
(state, resource used) pairs.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass

from .grid import ActionStep, Instance, WorldState, exact, successors


class OracleLimitExceeded(RuntimeError):
    """The instance is too large for exhaustive enumeration under the caps."""


@dataclass(frozen=True)
class OracleConfig:
    max_states: int = 5_000_000
    max_cost: float = 10_000

    def __post_init__(self):
        if self.max_states <= 0 or self.max_cost <= 0:
            raise ValueError("oracle caps must be positive")


@dataclass
class OracleSolution:
    cost: tuple
    actions: list[ActionStep]


class _Node:
    __slots__ = ("state", "cost", "parent", "action", "alive")

    def __init__(self, state, cost, parent, action):
        self.state = state
        self.cost = cost
        self.parent = parent
        self.action = action
        self.alive = True

    def actions(self):
        out = []
        node = self
        while node.parent is not None:
            out.append(node.action)
            node = node.parent
        return out[::-1]


def _step(instance, action):
    return instance.cost_push if action.push else instance.cost_move


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _exact_cost(c):
    return (exact(c[0]), exact(c[1]))


def oracle_pareto(instance: Instance, cfg: OracleConfig = OracleConfig()) -> list[OracleSolution]:
    """Exact cost-unique Pareto front, one witness path per cost vector.

    Every non-dominated label at every state is expanded in FIFO order until
    no label can be improved; goal states are expanded like any other.
    """
    labels: dict[WorldState, list[_Node]] = {}
    root = _Node(instance.initial_state, (0, 0), None, None)
    labels[root.state] = [root]
    queue = deque([root])
    while queue:
        node = queue.popleft()
        if not node.alive:
            continue
        for nxt, action in successors(node.state, instance.map):
            cost = _add(node.cost, _step(instance, action))
            if cost[0] > cfg.max_cost:
                raise OracleLimitExceeded(f"path cost {cost[0]} exceeds max_cost {cfg.max_cost}")
            here = labels.get(nxt)
            if here is None:
                if len(labels) >= cfg.max_states:
                    raise OracleLimitExceeded(f"more than {cfg.max_states} states")
                here = labels[nxt] = []
            if any(o.cost[0] <= cost[0] and o.cost[1] <= cost[1] for o in here):
                continue
            keep = []
            for o in here:
                if cost[0] <= o.cost[0] and cost[1] <= o.cost[1]:
                    o.alive = False
                else:
                    keep.append(o)
            child = _Node(nxt, cost, node, action)
            keep.append(child)
            labels[nxt] = keep
            queue.append(child)

    at_goal = [n for s, ns in labels.items() if s.robot == instance.goal for n in ns]
    best: dict[tuple, _Node] = {}
    for n in at_goal:
        best.setdefault(n.cost, n)
    front = [
        n for c, n in best.items()
        if not any(d != c and d[0] <= c[0] and d[1] <= c[1] for d in best)
    ]
    front.sort(key=lambda n: n.cost)
    return [OracleSolution(_exact_cost(n.cost), n.actions()) for n in front]


def oracle_rc(instance: Instance, k_push=math.inf, cfg: OracleConfig = OracleConfig()):
    """Minimum arrival time with the second cost component kept within ``k_push``.

    Uniform-cost search over ``(state, resource used)``; ties on time go to
    the smaller resource total, so the returned cost is the lexicographic
    minimum.  Returns ``None`` when no path fits the budget.
    """
    seen_best: dict[WorldState, object] = {}
    tie = itertools.count()
    heap = [(0, 0, next(tie), instance.initial_state, None)]
    expanded = 0
    while heap:
        t, r, _, state, trail = heapq.heappop(heap)
        prev = seen_best.get(state)
        # Reached earlier (so no later) with no more resource: nothing new.
        if prev is not None and prev <= r:
            continue
        seen_best[state] = r
        expanded += 1
        if expanded > cfg.max_states:
            raise OracleLimitExceeded(f"more than {cfg.max_states} (state, resource) pairs")
        if state.robot == instance.goal:
            actions = []
            while trail is not None:
                trail, action = trail
                actions.append(action)
            return OracleSolution(_exact_cost((t, r)), actions[::-1])
        for nxt, action in successors(state, instance.map):
            c = _step(instance, action)
            nt, nr = t + c[0], r + c[1]
            if nr > k_push:
                continue
            if nt > cfg.max_cost:
                raise OracleLimitExceeded(f"path cost {nt} exceeds max_cost {cfg.max_cost}")
            best = seen_best.get(nxt)
            if best is not None and best <= nr:
                continue
            heapq.heappush(heap, (nt, nr, next(tie), nxt, (trail, action)))
    return None
