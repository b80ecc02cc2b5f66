"""First-order unicycle kinematics.

Heading is measured from the +y axis: moving forward at heading ``theta``
travels along ``(sin theta, cos theta)``.  Swap :func:`unicycle_rate` to
change the convention; everything else reads poses through it.
"""

from __future__ import annotations

import math
from typing import NamedTuple

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Map an angle into [-pi, pi)."""
    return (theta + math.pi) % TWO_PI - math.pi


def angle_diff(a: float, b: float) -> float:
    """Shortest signed difference ``a - b``."""
    return wrap_angle(a - b)


class PoseSE2(NamedTuple):
    x: float
    y: float
    theta: float

    @classmethod
    def make(cls, x, y, theta=0.0) -> "PoseSE2":
        return cls(float(x), float(y), wrap_angle(float(theta)))


class Control(NamedTuple):
    v: float
    omega: float


def unicycle_rate(x: float, y: float, theta: float, v: float, omega: float):
    return v * math.sin(theta), v * math.cos(theta), omega


def integrate_unicycle(pose: PoseSE2, u: Control, dt: float) -> PoseSE2:
    """One classical Runge-Kutta 4 step of the unicycle model."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    x, y, th = pose
    v, w = u
    k1 = unicycle_rate(x, y, th, v, w)
    k2 = unicycle_rate(x + 0.5 * dt * k1[0], y + 0.5 * dt * k1[1], th + 0.5 * dt * k1[2], v, w)
    k3 = unicycle_rate(x + 0.5 * dt * k2[0], y + 0.5 * dt * k2[1], th + 0.5 * dt * k2[2], v, w)
    k4 = unicycle_rate(x + dt * k3[0], y + dt * k3[1], th + dt * k3[2], v, w)
    s = dt / 6.0
    return PoseSE2(
        x + s * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
        y + s * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
        wrap_angle(th + s * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])),
    )


def unicycle_arc(pose: PoseSE2, u: Control, t: float) -> PoseSE2:
    """Closed-form pose after driving ``u`` for ``t`` seconds."""
    x, y, th = pose
    v, w = u
    if abs(w) < 1e-12:
        return PoseSE2(x + v * t * math.sin(th), y + v * t * math.cos(th), wrap_angle(th))
    th1 = th + w * t
    r = v / w
    return PoseSE2(
        x + r * (math.cos(th) - math.cos(th1)),
        y + r * (math.sin(th1) - math.sin(th)),
        wrap_angle(th1),
    )
