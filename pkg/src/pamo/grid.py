"""Grid world for path planning among movable obstacles.

Cells are ``(x, y)`` pairs: ``x`` is the column, ``y`` the row.  Row 0 is the
first map row in the file.  Objects are identical single-cell bodies, so a
world state stores them as a tuple sorted by ``(y, x)``.
"""

from __future__ import annotations

import bisect
import math
import struct
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np
import yaml

Cell = tuple[int, int]

OBSTACLE_CHARS = frozenset("@OTW")
FREE_CHARS = frozenset(".GS")

# (dx, dy, letter); pushes are reported lowercase.
DIRECTIONS: tuple[tuple[int, int, str], ...] = (
    (1, 0, "R"),
    (-1, 0, "L"),
    (0, 1, "U"),
    (0, -1, "D"),
)
_LETTER_TO_DIR = {letter: (dx, dy) for dx, dy, letter in DIRECTIONS}


class MapParseError(ValueError):
    """Raised for malformed map text; the message names line and column."""


class InstanceError(ValueError):
    """Raised when an instance violates its invariants."""


class ReplayError(ValueError):
    """Raised when an action sequence contains an illegal step."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"illegal step at index {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    static_mask: np.ndarray = field(repr=False)  # shape (height, width), True = static obstacle

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        mask = np.asarray(self.static_mask, dtype=bool)
        if mask.shape != (self.height, self.width):
            raise ValueError(
                f"static_mask shape {mask.shape} does not match {self.height}x{self.width}"
            )
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "static_mask", mask)
        # Flat tuple lookup is much faster than numpy scalar indexing in hot loops.
        object.__setattr__(self, "_blocked", tuple(bool(b) for b in mask.ravel()))

    def in_bounds(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def is_static(self, cell: Cell) -> bool:
        """True for static obstacles and for anything off the grid."""
        x, y = cell
        if not (0 <= x < self.width and 0 <= y < self.height):
            return True
        return self._blocked[y * self.width + x]

    def free_cells(self) -> list[Cell]:
        ys, xs = np.nonzero(~self.static_mask)
        return [(int(x), int(y)) for y, x in zip(ys, xs)]

    def to_text(self) -> str:
        rows = ["".join("@" if b else "." for b in row) for row in self.static_mask]
        return "type octile\nheight {}\nwidth {}\nmap\n{}\n".format(
            self.height, self.width, "\n".join(rows)
        )

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and bool(
            np.array_equal(self.static_mask, other.static_mask)
        )

    def __hash__(self):
        return hash((self.width, self.height, self.static_mask.tobytes()))


def parse_map(text: str) -> GridMap:
    """Parse a map in the octile grid benchmark format."""
    lines = text.splitlines()

    def header(lineno: int, key: str) -> str:
        if lineno >= len(lines):
            raise MapParseError(f"line {lineno + 1}: missing '{key}' header")
        parts = lines[lineno].split()
        if not parts or parts[0] != key:
            raise MapParseError(f"line {lineno + 1}, column 1: expected '{key}' header")
        return " ".join(parts[1:])

    if header(0, "type") != "octile":
        raise MapParseError("line 1, column 6: map type must be 'octile'")
    dims = {}
    for lineno, key in ((1, "height"), (2, "width")):
        value = header(lineno, key)
        try:
            dims[key] = int(value)
        except ValueError:
            raise MapParseError(f"line {lineno + 1}: bad {key} value {value!r}") from None
        if dims[key] < 1:
            raise MapParseError(f"line {lineno + 1}: {key} must be positive")
    if header(3, "map") != "":
        raise MapParseError("line 4: 'map' line takes no arguments")

    height, width = dims["height"], dims["width"]
    body = lines[4:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != height:
        raise MapParseError(
            f"line {5 + min(len(body), height)}: expected {height} map rows, found {len(body)}"
        )
    mask = np.zeros((height, width), dtype=bool)
    for y, row in enumerate(body):
        row = row.rstrip("\r")
        if len(row) != width:
            raise MapParseError(
                f"line {5 + y}: expected {width} columns, found {len(row)}"
            )
        for x, ch in enumerate(row):
            if ch in OBSTACLE_CHARS:
                mask[y, x] = True
            elif ch not in FREE_CHARS:
                raise MapParseError(f"line {5 + y}, column {x + 1}: unknown character {ch!r}")
    return GridMap(width, height, mask)


def read_map(path) -> GridMap:
    with open(path) as fh:
        return parse_map(fh.read())


def _cost_value(v) -> int | Fraction:
    """Normalize a configured cost to an exact int or Fraction."""
    if isinstance(v, bool):
        raise InstanceError("cost entries must be numbers")
    if isinstance(v, float):
        frac = Fraction(repr(v))
    else:
        try:
            frac = Fraction(v)
        except (TypeError, ValueError):
            raise InstanceError(f"bad cost entry {v!r}") from None
    if frac < 0:
        raise InstanceError("costs must be non-negative")
    return int(frac) if frac.denominator == 1 else frac


def normalize_cost(vec: Sequence) -> tuple:
    if len(vec) != 2:
        raise InstanceError("cost vectors have exactly two entries")
    return tuple(_cost_value(v) for v in vec)


class ActionStep(NamedTuple):
    dx: int
    dy: int
    push: bool

    @property
    def letter(self) -> str:
        ch = {(1, 0): "R", (-1, 0): "L", (0, 1): "U", (0, -1): "D"}[(self.dx, self.dy)]
        return ch.lower() if self.push else ch


def actions_to_string(actions: Iterable[ActionStep]) -> str:
    return "".join(a.letter for a in actions)


def actions_from_string(text: str) -> list[ActionStep]:
    out = []
    for ch in text:
        try:
            dx, dy = _LETTER_TO_DIR[ch.upper()]
        except KeyError:
            raise ValueError(f"unknown action letter {ch!r}") from None
        out.append(ActionStep(dx, dy, ch.islower()))
    return out


def _order(cell: Cell) -> tuple[int, int]:
    return cell[1], cell[0]


def canonical_objects(cells: Iterable[Cell]) -> tuple[Cell, ...]:
    return tuple(sorted((tuple(c) for c in cells), key=_order))


class WorldState(NamedTuple):
    """Robot cell plus the canonical (sorted by row, then column) object cells."""

    robot: Cell
    objects: tuple[Cell, ...]

    @classmethod
    def make(cls, robot: Cell, objects: Iterable[Cell]) -> "WorldState":
        return cls(tuple(robot), canonical_objects(objects))

    def has_object(self, cell: Cell) -> bool:
        i = bisect.bisect_left(self.objects, _order(cell), key=_order)
        return i < len(self.objects) and self.objects[i] == cell


def state_key(state: WorldState) -> bytes:
    """Packed coordinates of the robot and every object.

    Fixed length for a given object count, and equal exactly when the states
    are equal. ``bytes`` caches its hash, which keeps dict lookups cheap.
    """
    flat = [state.robot[0], state.robot[1]]
    for c in state.objects:
        flat.extend(c)
    return struct.pack(f"<{len(flat)}H", *flat)


def _moved_objects(objects: tuple[Cell, ...], old: Cell, new: Cell) -> tuple[Cell, ...]:
    lst = list(objects)
    lst.remove(old)
    bisect.insort(lst, new, key=_order)
    return tuple(lst)


def successors(state: WorldState, grid: GridMap) -> list[tuple[WorldState, ActionStep]]:
    """All states reachable in one cardinal step, with the step that produced them."""
    rx, ry = state.robot
    objects = state.objects
    out = []
    for dx, dy, _ in DIRECTIONS:
        target = (rx + dx, ry + dy)
        if grid.is_static(target):
            continue
        if not state.has_object(target):
            out.append((WorldState(target, objects), ActionStep(dx, dy, False)))
            continue
        beyond = (target[0] + dx, target[1] + dy)
        if grid.is_static(beyond) or state.has_object(beyond):
            continue
        moved = _moved_objects(objects, target, beyond)
        out.append((WorldState(target, moved), ActionStep(dx, dy, True)))
    return out


@dataclass(frozen=True)
class Instance:
    map: GridMap
    start: Cell
    goal: Cell
    objects: tuple[Cell, ...] = ()
    cost_move: tuple = (1, 0)
    cost_push: tuple = (1, 1)
    map_path: str | None = None
    seed: int | None = None
    object_fraction: float | None = None

    def __post_init__(self):
        grid = self.map
        start, goal = tuple(self.start), tuple(self.goal)
        objects = canonical_objects(self.objects)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "goal", goal)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "cost_move", normalize_cost(self.cost_move))
        object.__setattr__(self, "cost_push", normalize_cost(self.cost_push))
        for name, cell in (("start", start), ("goal", goal)):
            if len(cell) != 2 or not grid.in_bounds(cell):
                raise InstanceError(f"{name} {cell} is out of bounds")
            if grid.is_static(cell):
                raise InstanceError(f"{name} {cell} is a static obstacle")
        if len(set(objects)) != len(objects):
            raise InstanceError("duplicate object cells")
        for cell in objects:
            if len(cell) != 2 or not grid.in_bounds(cell):
                raise InstanceError(f"object {cell} is out of bounds")
            if grid.is_static(cell):
                raise InstanceError(f"object {cell} sits on a static obstacle")
        if start in objects:
            raise InstanceError(f"start {start} is occupied by an object")

    @property
    def initial_state(self) -> WorldState:
        return WorldState(self.start, self.objects)

    def to_dict(self) -> dict:
        doc = {
            "map": self.map_path or "",
            "start": list(self.start),
            "goal": list(self.goal),
            "objects": [list(c) for c in self.objects],
            "cost_move": [_cost_out(c) for c in self.cost_move],
            "cost_push": [_cost_out(c) for c in self.cost_push],
        }
        if self.seed is not None:
            doc["seed"] = self.seed
        if self.object_fraction is not None:
            doc["object_fraction"] = self.object_fraction
        return doc


def _cost_out(c):
    return c if isinstance(c, int) else str(c)


def dump_instance(instance: Instance) -> str:
    """Key-ordered YAML with flow-style cell lists; always newline-terminated."""
    text = yaml.safe_dump(instance.to_dict(), sort_keys=True, default_flow_style=None, width=100)
    return text if text.endswith("\n") else text + "\n"


def load_instance(text: str, grid: GridMap) -> Instance:
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a mapping")
    for key in ("start", "goal"):
        if key not in doc:
            raise InstanceError(f"missing field {key!r}")
    try:
        return Instance(
            map=grid,
            start=_cell(doc["start"]),
            goal=_cell(doc["goal"]),
            objects=tuple(_cell(c) for c in doc.get("objects") or ()),
            cost_move=tuple(doc.get("cost_move", (1, 0))),
            cost_push=tuple(doc.get("cost_push", (1, 1))),
            map_path=doc.get("map") or None,
            seed=doc.get("seed"),
            object_fraction=doc.get("object_fraction"),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(str(exc)) from exc


def _cell(value) -> Cell:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise InstanceError(f"cell must be [x, y], got {value!r}")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise InstanceError(f"cell coordinates must be integers, got {value!r}")
    return int(value[0]), int(value[1])


def object_count(grid: GridMap, object_fraction: float) -> int:
    """Number of objects for a density: floor(fraction * total cell count)."""
    frac = Fraction(repr(float(object_fraction)))
    if not 0 <= frac <= 1:
        raise ValueError("object_fraction must lie in [0, 1]")
    return math.floor(frac * grid.width * grid.height)


def generate_instance(
    grid: GridMap,
    object_fraction: float,
    start: Cell,
    goal: Cell,
    seed: int,
    map_path: str | None = None,
) -> Instance:
    """Scatter objects uniformly over free cells other than start and goal."""
    start, goal = tuple(start), tuple(goal)
    for name, cell in (("start", start), ("goal", goal)):
        if grid.is_static(cell):
            raise InstanceError(f"{name} {cell} is not a free cell")
    n = object_count(grid, object_fraction)
    eligible = [c for c in grid.free_cells() if c != start and c != goal]
    if n > len(eligible):
        raise InstanceError(f"cannot place {n} objects on {len(eligible)} eligible cells")
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(eligible), size=n, replace=False) if n else []
    objects = [eligible[int(i)] for i in picks]
    return Instance(
        grid, start, goal, tuple(objects),
        map_path=map_path, seed=seed, object_fraction=object_fraction,
    )


def step_cost(instance: Instance, action: ActionStep) -> tuple:
    return instance.cost_push if action.push else instance.cost_move


def replay(instance: Instance, actions: Sequence[ActionStep]) -> tuple[WorldState, tuple]:
    """Apply ``actions`` from the initial state, checking every step.

    Returns the final state and the exact accumulated cost vector.
    """
    grid = instance.map
    state = instance.initial_state
    c1 = c2 = Fraction(0)
    for i, action in enumerate(actions):
        dx, dy, push = action
        if (abs(dx) + abs(dy)) != 1:
            raise ReplayError(i, f"({dx}, {dy}) is not a cardinal step")
        target = (state.robot[0] + dx, state.robot[1] + dy)
        if not grid.in_bounds(target):
            raise ReplayError(i, f"robot leaves the grid at {target}")
        if grid.is_static(target):
            raise ReplayError(i, f"robot enters static obstacle {target}")
        occupied = state.has_object(target)
        if occupied != push:
            what = "push" if push else "move"
            raise ReplayError(
                i, f"step labelled {what} but target {target} "
                + ("holds an object" if occupied else "is free")
            )
        if push:
            beyond = (target[0] + dx, target[1] + dy)
            if not grid.in_bounds(beyond):
                raise ReplayError(i, f"object pushed off the grid to {beyond}")
            if grid.is_static(beyond):
                raise ReplayError(i, f"object pushed into static obstacle {beyond}")
            if state.has_object(beyond):
                raise ReplayError(i, f"object pushed into another object at {beyond}")
            state = WorldState(target, _moved_objects(state.objects, target, beyond))
        else:
            state = WorldState(target, state.objects)
        a, b = step_cost(instance, action)
        c1 += a
        c2 += b
    return state, (exact(c1), exact(c2))


def exact(v) -> int | Fraction:
    v = Fraction(v)
    return int(v) if v.denominator == 1 else v
