"""Hybrid-planner scenarios, world states, and file formats."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import yaml

from .dynamics import Control, PoseSE2, wrap_angle
from .geometry import Rect

# Control set and pruning resolution used in the reported warehouse/office runs.
DEFAULT_CONTROLS = (
    Control(1.0, 0.5),
    Control(1.0, -0.5),
    Control(1.0, 0.0),
    Control(-0.2, 0.0),
    Control(1.0, 0.25),
    Control(1.0, -0.25),
    Control(0.0, 0.5),
    Control(0.0, -0.5),
)
DEFAULT_RESOLUTION = (0.2, 0.2, 0.4)
DEFAULT_TOLERANCE = (0.25, 0.25, math.pi)


class HybridWorldState(NamedTuple):
    robot: PoseSE2
    objects: tuple[PoseSE2, ...]


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    bounds: tuple[float, float, float, float]  # xmin, ymin, xmax, ymax
    start: PoseSE2
    goal: PoseSE2
    robot_size: tuple[float, float] = (1.0, 1.0)
    statics: tuple[Rect, ...] = ()
    objects: tuple[Rect, ...] = ()
    goal_tolerance: tuple[float, float, float] = DEFAULT_TOLERANCE
    resolution: tuple[float, float, float] = DEFAULT_RESOLUTION
    controls: tuple[Control, ...] = DEFAULT_CONTROLS
    dt: float = 0.5
    substeps: int = 10
    name: str = ""

    def __post_init__(self):
        if any(r <= 0 for r in self.resolution):
            raise ScenarioError("cell resolution must be strictly positive")
        if not self.controls:
            raise ScenarioError("control set must not be empty")
        if self.dt <= 0 or self.substeps < 1:
            raise ScenarioError("dt must be positive and substeps at least 1")
        xmin, ymin, xmax, ymax = self.bounds
        if xmin >= xmax or ymin >= ymax:
            raise ScenarioError("empty workspace bounds")
        object.__setattr__(self, "start", PoseSE2.make(*self.start))
        object.__setattr__(self, "goal", PoseSE2.make(*self.goal))
        object.__setattr__(self, "controls", tuple(Control(*c) for c in self.controls))

    @property
    def v_max(self) -> float:
        return max(abs(c.v) for c in self.controls)

    @property
    def initial_state(self) -> HybridWorldState:
        return HybridWorldState(
            self.start, tuple(PoseSE2.make(o.x, o.y, o.theta) for o in self.objects)
        )

    def robot_rect(self, pose: PoseSE2) -> Rect:
        return Rect(pose.x, pose.y, pose.theta, *self.robot_size)

    def object_rect(self, i: int, pose: PoseSE2) -> Rect:
        o = self.objects[i]
        return Rect(pose.x, pose.y, pose.theta, o.sx, o.sy)

    def to_dict(self) -> dict:
        def rect(r: Rect):
            return {"center": [r.x, r.y], "size": [r.sx, r.sy], "rotation": r.theta}

        return {
            "name": self.name,
            "bounds": list(self.bounds),
            "robot_size": list(self.robot_size),
            "start": list(self.start),
            "goal": list(self.goal),
            "goal_tolerance": list(self.goal_tolerance),
            "resolution": list(self.resolution),
            "controls": [list(c) for c in self.controls],
            "dt": self.dt,
            "substeps": self.substeps,
            "statics": [rect(r) for r in self.statics],
            "objects": [rect(r) for r in self.objects],
        }


def _rect(doc) -> Rect:
    try:
        (x, y), (sx, sy) = doc["center"], doc["size"]
        return Rect(float(x), float(y), float(doc.get("rotation", 0.0)), float(sx), float(sy))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad rectangle {doc!r}: {exc}") from None


def load_scenario(text: str) -> Scenario:
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a mapping")
    try:
        kw = dict(
            bounds=tuple(float(v) for v in doc["bounds"]),
            start=tuple(doc["start"]),
            goal=tuple(doc["goal"]),
        )
    except KeyError as exc:
        raise ScenarioError(f"missing field {exc}") from None
    if "robot_size" in doc:
        kw["robot_size"] = tuple(float(v) for v in doc["robot_size"])
    for key in ("goal_tolerance", "resolution"):
        if key in doc:
            kw[key] = tuple(float(v) for v in doc[key])
    if "controls" in doc:
        kw["controls"] = tuple(Control(float(v), float(w)) for v, w in doc["controls"])
    if "dt" in doc:
        kw["dt"] = float(doc["dt"])
    if "substeps" in doc:
        kw["substeps"] = int(doc["substeps"])
    kw["statics"] = tuple(_rect(r) for r in doc.get("statics") or ())
    kw["objects"] = tuple(_rect(r) for r in doc.get("objects") or ())
    kw["name"] = str(doc.get("name", ""))
    return Scenario(**kw)


def dump_scenario(scenario: Scenario) -> str:
    return yaml.safe_dump(scenario.to_dict(), sort_keys=True, default_flow_style=None, width=100)


def trajectory_csv(scenario: Scenario, trajectory) -> str:
    """Per-step rows: time, control, robot pose, then every object pose.

    ``trajectory`` is the planner's list of ``(Control, HybridWorldState)``;
    the first row is the start state with a zero control.
    """
    n = len(scenario.objects)
    header = ["time", "v", "omega", "robot_x", "robot_y", "robot_theta"]
    for i in range(n):
        header += [f"obj{i}_x", f"obj{i}_y", f"obj{i}_theta"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    rows = [(Control(0.0, 0.0), scenario.initial_state)] + list(trajectory)
    for k, (u, state) in enumerate(rows):
        row = [f"{k * scenario.dt:.6f}", u.v, u.omega, *state.robot]
        for p in state.objects:
            row += list(p)
        w.writerow(row)
    return buf.getvalue()
