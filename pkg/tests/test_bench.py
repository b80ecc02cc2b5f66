import json
import math
import shutil

import pytest

from pamo import Instance, generate_instance, load_instance, read_map
from pamo.bench import (
    CSV_COLUMNS,
    BenchSuite,
    RunRecord,
    SuiteError,
    emit_report,
    load_suite,
    parse_k,
    run_instance,
    run_suite,
    verify_records,
)
from pamo.cli import main
from pamo.maps import corner_start_goal, empty_map

from conftest import DATA

EMPTY8 = str(DATA / "maps" / "empty-8-8.map")


def record(outcome, wall=1.0, exp=10, sols=1, iid="a"):
    return RunRecord(iid, "rc", outcome, wall, exp, exp * 2, sols if outcome == "solved" else 0,
                     map="m", fraction=0.1, k_push="inf")


class TestSuite:
    def test_object_counts(self, tmp_path):
        suite = BenchSuite(maps=[EMPTY8], fractions=[0.1, 0.2, 0.3], seeds=[0],
                           start=(0, 0), goal=(7, 7), output=str(tmp_path))
        recs = run_suite(suite)
        counts = []
        for rec in recs:
            inst = load_instance((tmp_path / "instances" / f"{rec.instance_id}.yaml").read_text(),
                                 empty_map(8))
            counts.append(len(inst.objects))
        assert counts == [6, 12, 19]

    @pytest.mark.parametrize("name,count", [("random-64-64-10", 409), ("random-32-32-10", 102),
                                            ("room-32-32-4", 102)])
    def test_large_map_counts(self, name, count):
        grid = read_map(DATA / "maps" / f"{name}.map")
        s, g = corner_start_goal(grid)
        assert len(generate_instance(grid, 0.1, s, g, seed=0).objects) == count

    def test_no_seeds(self):
        assert run_suite(BenchSuite(maps=[EMPTY8], seeds=[])) == []

    def test_unreadable_map(self, tmp_path):
        with pytest.raises(SuiteError):
            run_suite(BenchSuite(maps=[EMPTY8, str(tmp_path / "nope.map")], seeds=[0]))

    def test_duplicate_seeds(self):
        with pytest.raises(SuiteError):
            BenchSuite(maps=[EMPTY8], seeds=[1, 1])

    def test_deterministic_outputs(self, tmp_path):
        outs = []
        for d in ("a", "b"):
            suite = BenchSuite(maps=[EMPTY8], fractions=[0.2], seeds=[0, 2, 3], mode="mo",
                               start=(0, 0), goal=(7, 7), output=str(tmp_path / d))
            recs = run_suite(suite)
            inst_text = sorted(p.read_text() for p in (tmp_path / d / "instances").iterdir())
            outs.append((inst_text, [(r.instance_id, r.outcome, r.costs, r.actions, r.expansions)
                                     for r in recs]))
        assert outs[0] == outs[1]

    def test_records_replay(self, tmp_path):
        suite = BenchSuite(maps=[EMPTY8], fractions=[0.3], seeds=[0, 1, 2], mode="mo",
                           start=(0, 0), goal=(7, 7), output=str(tmp_path), time_limit=20)
        recs = run_suite(suite)
        insts = {
            r.instance_id: load_instance(
                (tmp_path / "instances" / f"{r.instance_id}.yaml").read_text(), empty_map(8))
            for r in recs
        }
        verify_records(recs, insts)
        lines = (tmp_path / "records.jsonl").read_text().splitlines()
        assert [json.loads(l)["instance_id"] for l in lines] == [r.instance_id for r in recs]

    def test_tampered_record_detected(self, detour):
        rec = run_instance(detour, "mo", instance_id="d")
        rec.costs[0] = [5, 1]
        with pytest.raises(AssertionError):
            verify_records([rec], {"d": detour})

    def test_load_suite_resolves_paths(self, tmp_path):
        shutil.copy(EMPTY8, tmp_path / "e.map")
        (tmp_path / "s.yaml").write_text("maps: [e.map]\nseeds: [1]\nk_push: 2\noutput: out\n")
        suite = load_suite(tmp_path / "s.yaml")
        assert suite.maps == [str(tmp_path / "e.map")] and suite.k_push == 2
        assert suite.output == str(tmp_path / "out")

    def test_hybrid_suite(self, tmp_path):
        suite = BenchSuite(maps=[str(DATA / "scenarios" / "open-field.yaml")], mode="hybrid",
                           seeds=[0], time_limit=30)
        (rec,) = run_suite(suite)
        assert rec.outcome == "solved" and rec.costs[0][0] == pytest.approx(6.0)


class TestReport:
    def test_all_timeouts(self):
        summary, table = emit_report([record("timeout", iid=str(i)) for i in range(3)])
        row = table.splitlines()[1].split(",")
        assert row[CSV_COLUMNS.index("solve_rate")] == "0.0"
        assert row[CSV_COLUMNS.index("censored")] == "3"
        assert "lower bounds" in summary

    def test_single_record(self):
        _, table = emit_report([record("solved", wall=2.5, exp=40, sols=2)])
        row = dict(zip(CSV_COLUMNS, table.splitlines()[1].split(",")))
        assert float(row["median_wall_time"]) == float(row["mean_wall_time"]) == 2.5
        assert float(row["median_expansions"]) == 40 and float(row["mean_solutions"]) == 2

    def test_mixed(self):
        recs = [record("solved"), record("infeasible"), record("timeout"), record("solved")]
        _, table = emit_report(recs)
        row = dict(zip(CSV_COLUMNS, table.splitlines()[1].split(",")))
        assert float(row["solve_rate"]) == 0.5
        assert (row["solved"], row["infeasible"], row["timeout"]) == ("2", "1", "1")

    def test_header_is_frozen(self):
        _, table = emit_report([])
        assert table.splitlines() == [",".join(CSV_COLUMNS)]


def test_parse_k():
    assert parse_k("inf") == math.inf and parse_k(None) == math.inf
    assert parse_k("3") == 3
    with pytest.raises(ValueError):
        parse_k(-1)


class TestCli:
    inst = str(DATA / "instances" / "detour.yaml")

    def test_solve_mo(self, tmp_path):
        out = tmp_path / "r.json"
        assert main(["solve", "--instance", self.inst, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert [s["cost"] for s in doc["solutions"]] == [[4, 1], [12, 0]]
        assert doc["schema"] == "pamo-result-v1"

    def test_solve_rc_infeasible_exit(self, tmp_path):
        corridor = str(DATA / "instances" / "corridor.yaml")
        assert main(["solve", "--instance", corridor, "--mode", "rc", "--k-push", "2",
                     "--out", str(tmp_path / "r.json")]) == 2

    def test_solve_timeout_exit(self, tmp_path):
        gen = tmp_path / "i.yaml"
        main(["gen", "--map", EMPTY8, "--fraction", "0.2", "--seed", "1",
              "--start", "0,0", "--goal", "7,7", "--out", str(gen)])
        # This instance is infeasible and needs a long exhaustive search.
        assert main(["solve", "--instance", str(gen), "--time-limit", "0.2",
                     "--out", str(tmp_path / "r.json")]) == 3

    def test_gen_round_trip(self, tmp_path, capsys):
        out = tmp_path / "i.yaml"
        assert main(["gen", "--map", EMPTY8, "--fraction", "0.3", "--seed", "4", "--out", str(out)]) == 0
        assert main(["solve", "--instance", str(out), "--mode", "rc", "--out",
                     str(tmp_path / "r.json")]) in (0, 2)
        inst = load_instance(out.read_text(), empty_map(8))
        assert len(inst.objects) == 19 and inst.start == (0, 0) and inst.goal == (7, 7)

    def test_oracle(self, tmp_path):
        out = tmp_path / "o.json"
        assert main(["oracle", "--instance", self.inst, "--out", str(out)]) == 0
        assert [s["cost"] for s in json.loads(out.read_text())["solutions"]] == [[4, 1], [12, 0]]
        assert main(["oracle", "--instance", self.inst, "--k-push", "0", "--out", str(out)]) == 0
        assert json.loads(out.read_text())["solutions"][0]["cost"] == [12, 0]

    def test_hybrid(self, tmp_path):
        out = tmp_path / "t.csv"
        assert main(["hybrid", "--scenario", str(DATA / "scenarios" / "corridor-box.yaml"),
                     "--out", str(out)]) == 0
        assert out.read_text().startswith("time,v,omega")

    def test_bench(self, tmp_path, capsys):
        shutil.copy(EMPTY8, tmp_path / "e.map")
        (tmp_path / "s.yaml").write_text(
            "maps: [e.map]\nseeds: [0, 2]\nfractions: [0.1]\nmode: rc\noutput: out\n")
        assert main(["bench", "--suite", str(tmp_path / "s.yaml")]) == 0
        assert (tmp_path / "out" / "summary.csv").exists()
        assert "solved 2/2" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [[], ["solve"], ["solve", "--instance", "missing.yaml"],
                                      ["gen", "--map", EMPTY8, "--fraction", "x", "--seed", "1"]])
    def test_usage_errors(self, argv):
        assert main(argv) == 1

    def test_bad_map(self, tmp_path):
        (tmp_path / "bad.map").write_text("type octile\nheight 1\nwidth 2\nmap\n.x\n")
        assert main(["gen", "--map", str(tmp_path / "bad.map"), "--fraction", "0", "--seed", "0"]) == 1
