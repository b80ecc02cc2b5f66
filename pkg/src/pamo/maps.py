"""Map generators and the seeded small-instance corpus."""

from __future__ import annotations

import numpy as np

from .grid import Cell, GridMap, Instance


def empty_map(width: int, height: int | None = None) -> GridMap:
    height = width if height is None else height
    return GridMap(width, height, np.zeros((height, width), dtype=bool))


def random_map(width: int, height: int, density: float, seed: int) -> GridMap:
    """Uniformly scattered static obstacles; ``density`` is the obstacle fraction."""
    rng = np.random.default_rng(seed)
    n = int(round(density * width * height))
    mask = np.zeros(width * height, dtype=bool)
    mask[rng.choice(width * height, size=n, replace=False)] = True
    return GridMap(width, height, mask.reshape(height, width))


def room_map(width: int, height: int, room: int = 8, seed: int = 0) -> GridMap:
    """Square rooms of side ``room - 1`` separated by one-cell walls.

    Each wall segment between adjacent rooms gets one door at a random offset.
    """
    rng = np.random.default_rng(seed)
    mask = np.zeros((height, width), dtype=bool)
    mask[:, room - 1::room] = True
    mask[room - 1::room, :] = True
    for y0 in range(0, height, room):
        for x0 in range(0, width, room):
            y1 = min(y0 + room - 1, height)
            x1 = min(x0 + room - 1, width)
            if x1 < width:
                mask[rng.integers(y0, y1), x1] = False
            if y1 < height:
                mask[y1, rng.integers(x0, x1)] = False
    return GridMap(width, height, mask)


def corner_start_goal(grid: GridMap) -> tuple[Cell, Cell]:
    """Opposite free corners: first free cell in row-major order, and last.

    Used as the deterministic start/goal rule when a benchmark does not
    specify them.
    """
    free = grid.free_cells()
    if len(free) < 2:
        raise ValueError("map needs at least two free cells")
    return free[0], free[-1]


def small_random_instance(
    seed: int,
    max_side: int = 6,
    max_objects: int = 4,
    obstacle_density: tuple[float, float] = (0.0, 0.3),
) -> Instance:
    """Random instance small enough for exhaustive enumeration.

    Side lengths, obstacle density, object count and the start/goal cells are
    all drawn from ``seed``.  The start and goal are distinct free cells;
    objects avoid both.  Instances need not be feasible.
    """
    rng = np.random.default_rng(seed)
    while True:
        w = int(rng.integers(2, max_side + 1))
        h = int(rng.integers(2, max_side + 1))
        density = rng.uniform(*obstacle_density)
        mask = rng.random((h, w)) < density
        free = [(int(x), int(y)) for y, x in zip(*np.nonzero(~mask))]
        if len(free) >= 2:
            break
    grid = GridMap(w, h, mask)
    i, j = rng.choice(len(free), size=2, replace=False)
    start, goal = free[int(i)], free[int(j)]
    rest = [c for c in free if c != start and c != goal]
    k = min(int(rng.integers(0, max_objects + 1)), len(rest))
    picks = rng.choice(len(rest), size=k, replace=False) if k else []
    return Instance(grid, start, goal, tuple(rest[int(p)] for p in picks), seed=seed)
