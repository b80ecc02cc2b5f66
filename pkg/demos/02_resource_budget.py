"""
Fastest path under a push budget
================================
"""

from pathlib import Path

from pamo import load_instance, read_map, solve_rc

data = Path(__file__).resolve().parent.parent / "data" / "instances"
inst = load_instance((data / "detour.yaml").read_text(), read_map(data / "detour.map"))

# With no budget the push is worth it; with none allowed the robot goes round.
for k in (float("inf"), 1, 0):
    res = solve_rc(inst, k)
    print(f"K={k}: {res.outcome}", res.costs, res.solutions[0].action_string)

# The corridor has no way round, so a small budget is simply infeasible.
corridor = load_instance((data / "corridor.yaml").read_text(), read_map(data / "corridor.map"))
print(solve_rc(corridor, 0).outcome)
