from .dynamics import Control, PoseSE2, angle_diff, integrate_unicycle, unicycle_arc, wrap_angle
from .geometry import Rect, overlaps, penetration
from .planner import HybridResult, hybrid_cell, reached_goal, replay_controls, solve_hybrid
from .scenario import (
    DEFAULT_CONTROLS,
    DEFAULT_RESOLUTION,
    HybridWorldState,
    Scenario,
    ScenarioError,
    dump_scenario,
    load_scenario,
    trajectory_csv,
)
from .simulator import quasi_static_step, simulate_step
