"""Acceptance criteria, one test per criterion.

Each test appends a ``[PASS]``/``[FAIL]`` line to the acceptance section of
the terminal summary before asserting.
"""

import functools
import json
import math
import statistics
from collections import deque

import numpy as np

from pamo import (
    FrontierSet,
    Instance,
    Limits,
    WorldState,
    generate_instance,
    oracle_pareto,
    oracle_rc,
    read_map,
    replay,
    solve_mo,
    solve_rc,
    successors,
)
from pamo.hybrid import (
    Control,
    PoseSE2,
    integrate_unicycle,
    overlaps,
    reached_goal,
    replay_controls,
    solve_hybrid,
    unicycle_arc,
    wrap_angle,
)
from pamo.hybrid.geometry import inside_bounds
from pamo.hybrid.scenarios import corridor_with_box, l_room_two_boxes, open_field
from pamo.maps import corner_start_goal, empty_map, random_map, small_random_instance

from conftest import ACCEPTANCE_LINES, DATA, load_fixture

INF = math.inf
BUDGETS = (0, 1, 2, INF)


def report(n, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] C{n} {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


def as_json(cost):
    return json.dumps([c if isinstance(c, int) else str(c) for c in cost])


def bfs(grid, start, goal, walls=()):
    walls = set(walls)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        if (x, y) == goal:
            return seen[goal]
        for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if c not in seen and not grid.is_static(c) and c not in walls:
                seen[c] = seen[(x, y)] + 1
                queue.append(c)
    return None


# Runs are cached so the replay criterion can revisit every emitted solution.

@functools.lru_cache(maxsize=None)
def c1_runs():
    runs = []
    for seed in range(100):
        inst = small_random_instance(seed)
        mo = solve_mo(inst)
        rc = {k: solve_rc(inst, k) for k in BUDGETS}
        runs.append((inst, mo, oracle_pareto(inst), rc, {k: oracle_rc(inst, k) for k in BUDGETS}))
    return runs


@functools.lru_cache(maxsize=None)
def c2_runs():
    grid = empty_map(8)
    limits = Limits(time=60, expansions=10**5)
    out = []
    for seed in range(10):
        inst = generate_instance(grid, 0.2, (0, 0), (7, 7), seed)
        out.append((inst, solve_mo(inst, limits), solve_rc(inst, INF, limits)))
    return out


@functools.lru_cache(maxsize=None)
def c3_runs():
    grid = read_map(DATA / "maps" / "random-32-32-10.map")
    start, goal = corner_start_goal(grid)
    out = []
    for seed in range(10):
        inst = generate_instance(grid, 0.1, start, goal, seed)
        out.append((inst, solve_rc(inst, INF, Limits(time=60))))
    return out


@functools.lru_cache(maxsize=None)
def c4_run():
    inst = load_fixture("detour")
    return inst, solve_mo(inst), oracle_pareto(inst)


@functools.lru_cache(maxsize=None)
def c5_runs():
    rng = np.random.default_rng(5)
    out = []
    for seed in range(50):
        w, h = (int(v) for v in rng.integers(3, 13, size=2))
        grid = random_map(w, h, float(rng.uniform(0, 0.3)), seed)
        start, goal = corner_start_goal(grid)
        bare = Instance(grid, start, goal)
        crowded = generate_instance(grid, 0.15, start, goal, seed)
        out.append((bare, solve_mo(bare), crowded, solve_rc(crowded, 0)))
    return out


def test_c1_oracle_equivalence():
    bad = []
    for inst, mo, front, rc, orc in c1_runs():
        if sorted(mo.costs) != sorted(s.cost for s in front):
            bad.append((inst.seed, "mo"))
        for k in BUDGETS:
            want = None if orc[k] is None else orc[k].cost
            got = rc[k].costs[0] if rc[k].solutions else None
            if got != want:
                bad.append((inst.seed, f"K={k}"))
    report(1, not bad, f"oracle equivalence on 100 instances (MO and RC K in 0,1,2,inf); mismatches {bad}")


def test_c2_small_exploration():
    runs = c2_runs()
    assert all(len(inst.objects) == 12 for inst, *_ in runs)
    mo = [r.stats.expansions for _, r, _ in runs]
    rc = [r.stats.expansions for *_, r in runs]
    med_mo, med_rc = statistics.median(mo), statistics.median(rc)
    ratio_ok = max(mo + rc) * 10**15 <= 64**13
    ok = med_mo <= 10**4 and med_rc <= 10**3 and ratio_ok
    report(2, ok, f"empty 8x8, 12 objects: median expansions MO {med_mo:g} (<=1e4), "
                  f"RC {med_rc:g} (<=1e3); max {max(mo + rc)} is below 64^13/1e15")


def test_c3_scalability():
    runs = c3_runs()
    assert all(len(inst.objects) == 102 for inst, _ in runs)
    solved = [r for _, r in runs if r.outcome == "solved" and r.stats.wall_time < 60]
    slowest = max(r.stats.wall_time for _, r in runs)
    report(3, len(solved) >= 7,
           f"random 32x32, 102 objects, RC K=inf: solved {len(solved)}/10 (>=7), slowest {slowest:.2f}s")


def test_c4_tradeoff_front():
    _, mo, front = c4_run()
    costs = sorted(mo.costs)
    ok = (
        len(costs) == 2
        and costs == sorted(s.cost for s in front)
        and costs[1][1] == 0 and costs[1][0] > costs[0][0]
    )
    report(4, ok, f"detour fixture front {costs} equals the oracle and holds a slower push-free point")


def test_c5_degenerate_reductions():
    bad = []
    for bare, mo, crowded, rc in c5_runs():
        d = bfs(bare.map, bare.start, bare.goal)
        if mo.costs != ([] if d is None else [(d, 0)]):
            bad.append((bare.map.width, bare.map.height, "no objects"))
        walled = bfs(crowded.map, crowded.start, crowded.goal, crowded.objects)
        if rc.costs != ([] if walled is None else [(walled, 0)]):
            bad.append((crowded.seed, "K=0"))
    report(5, not bad, f"50 random maps: zero objects gives (d*, 0); K=0 equals objects-as-walls search; mismatches {bad}")


def test_c6_replay_soundness():
    emitted = []
    for inst, mo, front, rc, orc in c1_runs():
        emitted += [(inst, s) for s in mo.solutions + front]
        for k in BUDGETS:
            emitted += [(inst, s) for s in rc[k].solutions]
            if orc[k] is not None:
                emitted.append((inst, orc[k]))
    for inst, mo, rc in c2_runs():
        emitted += [(inst, s) for s in mo.solutions + rc.solutions]
    for inst, rc in c3_runs():
        emitted += [(inst, s) for s in rc.solutions]
    inst, mo, front = c4_run()
    emitted += [(inst, s) for s in mo.solutions + front]
    for bare, mo, crowded, rc in c5_runs():
        emitted += [(bare, s) for s in mo.solutions] + [(crowded, s) for s in rc.solutions]

    failed = 0
    for inst, sol in emitted:
        try:
            state, cost = replay(inst, sol.actions)
        except ValueError:
            failed += 1
            continue
        if state.robot != inst.goal or as_json(cost) != as_json(sol.cost):
            failed += 1
    report(6, bool(emitted) and failed == 0,
           f"replayed {len(emitted)} solutions from criteria 1-5; {failed} failed")


def _violations(scenario, trace):
    count = 0
    for st in trace:
        robot = scenario.robot_rect(st.robot)
        bodies = [scenario.object_rect(i, p) for i, p in enumerate(st.objects)]
        for r in [robot] + bodies:
            if not inside_bounds(r, scenario.bounds) or any(overlaps(r, s) for s in scenario.statics):
                count += 1
        rects = [robot] + bodies
        for i in range(len(rects)):
            for j in range(i + 1, len(rects)):
                count += overlaps(rects[i], rects[j])
    return count


def test_c7_hybrid_sanity():
    details = []
    ok = True
    for make in (open_field, corridor_with_box, l_room_two_boxes):
        scenario = make()
        res = solve_hybrid(scenario, time_limit=30)
        if not res.success or res.stats.wall_time > 30:
            ok = False
            details.append(f"{scenario.name} unsolved")
            continue
        trace = []
        states = replay_controls(scenario, res.controls, trace=trace)
        bad = _violations(scenario, trace)
        ok &= bad == 0 and reached_goal(states[-1], scenario)
        ok &= len(trace) == len(res.controls) * scenario.substeps
        details.append(f"{scenario.name} t={res.arrival_time:g}s {len(trace)} substeps {bad} overlaps")

    worst = 0.0
    h = open_field().dt / open_field().substeps
    for u in (Control(1.0, 0.5), Control(1.0, -0.25), Control(-0.2, 0.0), Control(0.7, 1.3)):
        pose = PoseSE2(0.3, -0.2, 0.4)
        exact_pose = unicycle_arc(pose, u, 1.0)
        for _ in range(round(1.0 / h)):
            pose = integrate_unicycle(pose, u, h)
        worst = max(worst, math.hypot(pose.x - exact_pose.x, pose.y - exact_pose.y))
        worst = max(worst, abs(wrap_angle(pose.theta - exact_pose.theta)))
    ok &= worst <= 1e-6
    report(7, ok, f"hybrid: {'; '.join(details)}; RK4 vs arc over 1 s: {worst:.1e} (<=1e-6)")


N_CASES = 10**4


def test_c8_invariant_suites():
    rng = np.random.default_rng(8)
    counts = {}

    # Frontier shape: strictly increasing g1, strictly decreasing g2, and
    # equal to the non-dominated subset of everything inserted.
    n = 0
    for _ in range(N_CASES):
        pts = [tuple(int(v) for v in p) for p in rng.integers(0, 12, size=(int(rng.integers(1, 15)), 2))]
        front = FrontierSet()
        for p in pts:
            if not front.check(p):
                front.update(p)
        want = sorted({p for p in pts if not any(q[0] <= p[0] and q[1] <= p[1] and q != p for q in pts)})
        assert front.is_well_formed() and front.entries() == want
        n += 1
    counts["frontier shape"] = n

    # Lexicographic monotonicity of expanded f-vectors.
    n = 0
    seed = 0
    while n < N_CASES:
        inst = small_random_instance(10**6 + seed, max_side=5, max_objects=3)
        seed += 1
        fs = []
        solve_mo(inst, on_expand=lambda lab: fs.append(lab.f))
        assert all(a <= b for a, b in zip(fs, fs[1:])), inst
        n += max(len(fs) - 1, 0)
    counts["lexicographic order"] = n

    # Push locality and untouched objects over random single steps.
    n_local = n_untouched = 0
    while n_local < N_CASES:
        inst = small_random_instance(int(rng.integers(2**31)), max_objects=6)
        free = inst.map.free_cells()
        k = int(rng.integers(0, len(free)))
        cells = [free[int(i)] for i in rng.permutation(len(free))[: k + 1]]
        state = WorldState.make(cells[0], cells[1:])
        for nxt, action in successors(state, inst.map):
            dx, dy, push = action
            target = (state.robot[0] + dx, state.robot[1] + dy)
            assert nxt.robot == target
            gone = set(state.objects) - set(nxt.objects)
            new = set(nxt.objects) - set(state.objects)
            if push:
                assert gone == {target} and new == {(target[0] + dx, target[1] + dy)}
            else:
                assert not gone and not new
            n_local += 1
            assert set(state.objects) - gone <= set(nxt.objects)
            n_untouched += len(state.objects) - len(gone)
    counts["push locality"] = n_local
    counts["untouched objects"] = n_untouched

    ok = all(v >= N_CASES for v in counts.values())
    report(8, ok, "invariant cases " + ", ".join(f"{k} {v}" for k, v in counts.items()) + " (each >=1e4)")
