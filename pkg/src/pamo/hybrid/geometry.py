"""Oriented rectangles and separating-axis overlap tests.

A rectangle's ``sx`` extent lies along its body x-axis ``(cos t, -sin t)``
and ``sy`` along its heading ``(sin t, cos t)``, matching the unicycle
heading convention; at ``theta = 0`` it is axis-aligned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Penetration depth at or below this is contact, not overlap.
OVERLAP_EPS = 1e-9


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    theta: float
    sx: float
    sy: float

    def __post_init__(self):
        if self.sx <= 0 or self.sy <= 0:
            raise ValueError("rectangle sides must be positive")

    @property
    def axes(self):
        c, s = math.cos(self.theta), math.sin(self.theta)
        return (c, -s), (s, c)

    @property
    def radius(self) -> float:
        return 0.5 * math.hypot(self.sx, self.sy)

    def corners(self) -> list[tuple[float, float]]:
        (ax, ay), (bx, by) = self.axes
        hx, hy = 0.5 * self.sx, 0.5 * self.sy
        out = []
        for i, j in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
            out.append((self.x + i * hx * ax + j * hy * bx, self.y + i * hx * ay + j * hy * by))
        return out

    def contains(self, px: float, py: float, eps: float = 0.0) -> bool:
        dx, dy = px - self.x, py - self.y
        (ax, ay), (bx, by) = self.axes
        return (
            abs(dx * ax + dy * ay) <= 0.5 * self.sx + eps
            and abs(dx * bx + dy * by) <= 0.5 * self.sy + eps
        )

    def moved(self, x: float, y: float, theta: float) -> "Rect":
        return Rect(x, y, theta, self.sx, self.sy)

    def bbox(self):
        xs, ys = zip(*self.corners())
        return min(xs), min(ys), max(xs), max(ys)


def _project(corners, axis):
    ax, ay = axis
    vals = [cx * ax + cy * ay for cx, cy in corners]
    return min(vals), max(vals)


def penetration(a: Rect, b: Rect):
    """Minimum translation separating ``b`` from ``a``.

    Returns ``(depth, (nx, ny))`` where ``(nx, ny)`` is a unit vector pointing
    from ``a`` towards ``b``; moving ``b`` by ``depth`` along it removes the
    overlap.  ``depth <= 0`` means the rectangles are separated (or touching).
    """
    dx, dy = b.x - a.x, b.y - a.y
    if dx * dx + dy * dy > (a.radius + b.radius) ** 2:
        return -1.0, (0.0, 0.0)
    ca, cb = a.corners(), b.corners()
    best = math.inf
    best_axis = (0.0, 0.0)
    for axis in a.axes + b.axes:
        amin, amax = _project(ca, axis)
        bmin, bmax = _project(cb, axis)
        depth = min(amax, bmax) - max(amin, bmin)
        if depth <= 0:
            return depth, axis
        if depth < best:
            best = depth
            best_axis = axis
    nx, ny = best_axis
    if nx * dx + ny * dy < 0:
        nx, ny = -nx, -ny
    return best, (nx, ny)


def overlaps(a: Rect, b: Rect) -> bool:
    return penetration(a, b)[0] > OVERLAP_EPS


def inside_bounds(r: Rect, bounds) -> bool:
    xmin, ymin, xmax, ymax = bounds
    x0, y0, x1, y1 = r.bbox()
    return x0 >= xmin - OVERLAP_EPS and y0 >= ymin - OVERLAP_EPS and x1 <= xmax + OVERLAP_EPS and y1 <= ymax + OVERLAP_EPS


def contact_point(a: Rect, b: Rect):
    """Rough contact location: mean of the corners of each rectangle inside the other."""
    pts = [p for p in a.corners() if b.contains(*p, eps=1e-9)]
    pts += [p for p in b.corners() if a.contains(*p, eps=1e-9)]
    if not pts:
        return None
    return sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts)
