"""
Checking the search against brute force
=======================================

Small random instances are enumerated exhaustively and compared with the
informed search.  Every reported path is replayed step by step.
"""

from pamo import oracle_pareto, replay, solve_mo
from pamo.maps import small_random_instance

agree = 0
for seed in range(50):
    inst = small_random_instance(seed)
    fast = sorted(solve_mo(inst).costs)
    slow = sorted(s.cost for s in oracle_pareto(inst))
    agree += fast == slow

    # replay raises if any step is illegal
    for sol in solve_mo(inst).solutions:
        assert replay(inst, sol.actions)[1] == sol.cost

print(f"{agree}/50 fronts agree")

inst = small_random_instance(7)
print(inst.map.to_text())
print("start", inst.start, "goal", inst.goal, "objects", inst.objects)
print(sorted(solve_mo(inst).costs))
