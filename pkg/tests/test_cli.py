import json
import subprocess
import sys

import pytest

from sscvc.cli import main
from sscvc.engine import Trace


def run_cli(args, capsys):
    code = main(args)
    return code, capsys.readouterr()


def test_p3_synchronous_zeroed(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out = run_cli(["run", "--graph", "path:3", "--daemon", "synchronous", "--zeroed",
                         "--oracle", "--report-out", str(rep)], capsys)
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["cover"]["cover"] == [0, 1] and doc["cover"]["ratio"] == 2.0
    assert "ratio 2.000" in out.out


def test_terminal_input_runs_zero_steps(capsys, tmp_path):
    trace = tmp_path / "t.json"
    assert main(["run", "--graph", "complete:3", "--trace-out", str(trace)]) == 0
    capsys.readouterr()
    code, out = run_cli(["run", "--graph", "complete:3", "--initial", str(trace),
                         "--format", "structured"], capsys)
    assert code == 0 and json.loads(out.out)["run"]["steps"] == 0


def test_tiny_cap_reports_divergence(capsys):
    code, _ = run_cli(["run", "--graph", "complete:3", "--fault-seed", "3", "--max-steps", "1"], capsys)
    assert code == 2


def test_check_failure_exit_code(capsys, tmp_path):
    # the literal rules stop on a non-cover for this graph
    f = tmp_path / "g.txt"
    f.write_text("0-1\n0-3\n1-3\n0-2\n2-3\n2-4\n")
    code, _ = run_cli(["run", "--graph", str(f), "--zeroed", "--rules", "literal"], capsys)
    assert code == 1


def test_io_and_parse_errors(capsys, tmp_path):
    assert run_cli(["run", "--graph", str(tmp_path / "missing")], capsys)[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("0-1\n2-3\n")
    assert run_cli(["oracle", "--graph", str(bad)], capsys)[0] == 3
    assert run_cli(["run", "--graph", "path:3", "--initial", str(bad)], capsys)[0] == 3
    assert run_cli(["run", "--bogus"], capsys)[0] == 3


@pytest.mark.parametrize("graph, size", [("path:5", 3), ("complete:4", 3), ("path:1", 0)])
def test_oracle(capsys, graph, size):
    code, out = run_cli(["oracle", "--graph", graph, "--format", "structured"], capsys)
    assert code == 0 and json.loads(out.out)["size"] == size


def test_oracle_cap(capsys):
    assert run_cli(["oracle", "--graph", "path:21"], capsys)[0] == 4


def test_bench_deterministic_and_bounded(capsys):
    args = ["bench", "--n-min", "1", "--n-max", "6", "--graphs-per-n", "10", "--bfs"]
    code, first = run_cli(args, capsys)
    assert code == 0
    _, second = run_cli(args, capsys)
    assert first.out == second.out
    code, out = run_cli(args + ["--format", "structured"], capsys)
    rows = json.loads(out.out)["rows"]
    assert len(rows) == 60 and all(r["ratio"] <= 2.0 for r in rows)
    keys = [(r["n"], r["graph_seed"], r["daemon"], r["run_seed"]) for r in rows]
    assert keys == sorted(keys)


def test_bench_cmcp_moves_within_quadratic_budget(capsys):
    code, out = run_cli(["bench", "--n-max", "6", "--no-bfs", "--format", "structured",
                         "--daemons", "synchronous", "central_random", "adversarial_greedy"], capsys)
    assert code == 0
    for r in json.loads(out.out)["rows"]:
        n = r["n"]
        assert r["cmcp_moves"] <= n + 3 * n * (n + 1) // 2


def test_bench_parallel_matches_sequential(capsys):
    base = ["bench", "--n-max", "4", "--graphs-per-n", "3", "--format", "structured"]
    _, a = run_cli(base, capsys)
    _, b = run_cli(base + ["--jobs", "2"], capsys)
    assert a.out == b.out


def test_generate_round_trips_through_run(capsys, tmp_path):
    f = tmp_path / "g.json"
    assert main(["generate", "--n", "7", "--p", "0.3", "--seed", "4", "--format", "structured",
                 "--out", str(f)]) == 0
    code, _ = run_cli(["run", "--graph", str(f), "--oracle"], capsys)
    assert code == 0
    code, out = run_cli(["generate", "--n", "4", "--p", "1.0", "--root", "2"], capsys)
    assert out.out.splitlines()[0] == "root: 2" and len(out.out.splitlines()) == 7


def test_verify_replays_trace(capsys, tmp_path):
    t = tmp_path / "t.json"
    main(["run", "--graph", "random:8:0.3:2", "--daemon", "central_random", "--trace-out", str(t)])
    capsys.readouterr()
    code, out = run_cli(["verify", "--trace", str(t), "--format", "structured"], capsys)
    doc = json.loads(out.out)
    assert code == 0 and doc["replay"] and doc["legitimate_cmcp"]
    tampered = json.loads(t.read_text())
    tampered["final"]["0"]["In"] = not tampered["final"]["0"]["In"]
    t.write_text(json.dumps(tampered))
    assert run_cli(["verify", "--trace", str(t)], capsys)[0] == 1


def test_output_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SSCVC_OUTPUT_DIR", str(tmp_path / "out"))
    assert run_cli(["run", "--graph", "star:3"], capsys)[0] == 0
    trace = Trace.loads((tmp_path / "out" / "trace.json").read_text())
    assert trace.terminal
    assert json.loads((tmp_path / "out" / "report.json").read_text())["ok"]


def test_outputs_parse_back_losslessly(tmp_path):
    t, r = tmp_path / "t.json", tmp_path / "r.json"
    main(["run", "--graph", "cycle:6", "--trace-out", str(t), "--report-out", str(r)])
    assert Trace.loads(t.read_text()).dumps() == t.read_text()
    doc = json.loads(r.read_text())
    assert json.dumps(doc, indent=1, sort_keys=True) + "\n" == r.read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sscvc", "oracle", "--graph", "path:5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("3 ")
