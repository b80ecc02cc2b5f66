"""Small hand-built scenarios used by the demos and the test suite."""

from __future__ import annotations

import math

from .geometry import Rect
from .scenario import Scenario


def open_field() -> Scenario:
    """8 m x 8 m room, nothing in it; the goal lies straight ahead of the start."""
    return Scenario(bounds=(0, 0, 8, 8), start=(1.0, 1.0, 0.0), goal=(1.0, 7.0, 0.0), name="open-field")


def corridor_with_box() -> Scenario:
    """1.6 m wide corridor; a 0.8 m box sits in the way and cannot be bypassed."""
    return Scenario(
        bounds=(0, 0, 1.6, 10),
        start=(0.8, 1.0, 0.0),
        goal=(0.8, 7.5, 0.0),
        objects=(Rect(0.8, 4.0, 0.0, 0.8, 0.8),),
        name="corridor-box",
    )


def l_room_two_boxes() -> Scenario:
    """L-shaped room: the upper-right quadrant is solid.  One box in each arm."""
    return Scenario(
        bounds=(0, 0, 8, 8),
        start=(6.5, 2.0, -math.pi / 2),
        goal=(2.0, 6.5, 0.0),
        statics=(Rect(6.0, 6.0, 0.0, 4.0, 4.0),),
        objects=(Rect(3.5, 2.0, 0.0, 0.8, 0.8), Rect(2.0, 4.5, 0.0, 1.0, 0.6)),
        name="l-room",
    )


ALL = {s().name: s for s in (open_field, corridor_with_box, l_room_two_boxes)}
