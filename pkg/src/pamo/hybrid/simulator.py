"""Robot-object interaction simulators.

A simulator is any callable ``sim(state, control, dt, scenario, trace=None)``
returning the next :class:`HybridWorldState`, or ``None`` when the motion is
invalid.  It must be deterministic and keep no state between calls.  When
``trace`` is a list, every intermediate substep state is appended to it.
"""

from __future__ import annotations

import math
from typing import Optional, Protocol

from .dynamics import Control, PoseSE2, integrate_unicycle, wrap_angle
from .geometry import Rect, contact_point, inside_bounds, overlaps, penetration
from .scenario import HybridWorldState, Scenario

# Clearance left after separating two bodies.
SLOP = 1e-6
MAX_TURN_PER_SUBSTEP = 0.1


class Simulator(Protocol):
    def __call__(
        self,
        state: HybridWorldState,
        u: Control,
        dt: float,
        scenario: Scenario,
        trace: Optional[list] = None,
    ) -> Optional[HybridWorldState]: ...


def _collides_static(rect: Rect, scenario: Scenario) -> bool:
    if not inside_bounds(rect, scenario.bounds):
        return True
    return any(overlaps(rect, s) for s in scenario.statics)


def _shove(pusher: Rect, body: Rect, rotate: bool) -> Rect:
    """Move ``body`` out of ``pusher`` along the minimum-penetration direction.

    With ``rotate`` set, an off-centre contact also turns the body about its
    centre by an amount proportional to the lever arm, then any remaining
    penetration is removed by translation.
    """
    depth, (nx, ny) = penetration(pusher, body)
    if depth <= 0:
        return body
    x, y, th = body.x, body.y, body.theta
    if rotate:
        cp = contact_point(pusher, body)
        if cp is not None:
            rx, ry = cp[0] - x, cp[1] - y
            gyr2 = (body.sx ** 2 + body.sy ** 2) / 12.0
            # World counter-clockwise torque lowers theta (clockwise-positive angles).
            turn = -(rx * ny - ry * nx) * depth / gyr2
            th = wrap_angle(th + max(-MAX_TURN_PER_SUBSTEP, min(MAX_TURN_PER_SUBSTEP, turn)))
    body = body.moved(x + (depth + SLOP) * nx, y + (depth + SLOP) * ny, th)
    for _ in range(4):
        depth, (nx, ny) = penetration(pusher, body)
        if depth <= 0:
            break
        body = body.moved(body.x + (depth + SLOP) * nx, body.y + (depth + SLOP) * ny, body.theta)
    return body


def quasi_static_step(
    state: HybridWorldState,
    u: Control,
    dt: float,
    scenario: Scenario,
    trace: Optional[list] = None,
) -> Optional[HybridWorldState]:
    """Positional push resolution with no mass, friction or momentum.

    The robot is integrated over ``scenario.substeps`` slices of ``dt``.  After
    each slice, objects the robot overlaps are pushed out of it; an object
    pushed into another object passes the push along the chain.  The step is
    invalid if the robot hits a static obstacle or leaves the workspace, if a
    pushed object cannot be freed, or if the robot makes contact while
    reversing.
    """
    n = scenario.substeps
    h = dt / n
    robot = state.robot
    rects = [scenario.object_rect(i, p) for i, p in enumerate(state.objects)]
    for _ in range(n):
        robot = integrate_unicycle(robot, u, h)
        rrect = scenario.robot_rect(robot)
        if _collides_static(rrect, scenario):
            return None
        # Breadth-first chain of pushes starting from the robot.
        frontier = [rrect]
        moved = set()
        rounds = 0
        while frontier:
            rounds += 1
            if rounds > len(rects) + 1:
                return None
            nxt = []
            for pusher in frontier:
                for i, body in enumerate(rects):
                    if i in moved or not overlaps(pusher, body):
                        continue
                    if pusher is rrect and u.v < 0:
                        return None
                    body = _shove(pusher, body, rotate=True)
                    if _collides_static(body, scenario) or overlaps(rrect, body):
                        return None
                    rects[i] = body
                    moved.add(i)
                    nxt.append(body)
            frontier = nxt
        for i in range(len(rects)):
            if overlaps(rrect, rects[i]):
                return None
            for j in range(i + 1, len(rects)):
                if overlaps(rects[i], rects[j]):
                    return None
        if trace is not None:
            trace.append(
                HybridWorldState(robot, tuple(PoseSE2(r.x, r.y, r.theta) for r in rects))
            )
    return HybridWorldState(robot, tuple(PoseSE2(r.x, r.y, r.theta) for r in rects))


def simulate_step(state, u, dt, scenario, trace=None, simulator: Simulator = quasi_static_step):
    return simulator(state, u, dt, scenario, trace)
