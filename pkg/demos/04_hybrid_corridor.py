"""
A continuous robot pushing a box down a corridor
================================================

The robot is a 1 m square on unicycle kinematics.  The corridor is too narrow
to pass the box, so the only way to the goal is to push it.
"""

import numpy as np

from pamo.hybrid import solve_hybrid, trajectory_csv
from pamo.hybrid.scenarios import corridor_with_box

scenario = corridor_with_box()
res = solve_hybrid(scenario, time_limit=30)
print("arrival", res.arrival_time, "s after", res.stats.expansions, "expansions")

# Columns: time, v, omega, robot pose, then one pose per object.
rows = trajectory_csv(scenario, res.trajectory).splitlines()
table = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
print(rows[0])
print(table[:, [0, 3, 4, 6, 7]].round(2))

box_travel = table[-1, 7] - table[0, 7]
print(f"box moved {box_travel:.2f} m along the corridor")
