"""
Trading arrival time for pushes
===============================

A short route through a box, or a long way round.  The bi-objective search
returns both, since neither beats the other on every count.
"""

from pathlib import Path

from pamo import load_instance, read_map, solve_mo

data = Path(__file__).resolve().parent.parent / "data" / "instances"
grid = read_map(data / "detour.map")
inst = load_instance((data / "detour.yaml").read_text(), grid)
print(grid.to_text())

# Each point on the front is (arrival time, pushes), with one witness path.
res = solve_mo(inst)
for sol in res.solutions:
    print(sol.cost, sol.action_string)

print("expanded", res.stats.expansions, "labels")
