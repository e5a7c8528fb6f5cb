"""End-to-end checks of the command-line tool (path via $DMDP_CLI)."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("DMDP_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="DMDP_CLI not set")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


def test_gen_solve_round_trip(tmp_path):
    instance = tmp_path / "p3.dmdp"
    assert run("gen", "--n", "3", "-o", str(instance)).returncode == 0
    text = instance.read_text()
    assert text.count("vertex ") == 6
    assert text.count("edge ") == 24

    solve = run("solve", str(instance))
    assert solve.returncode == 0
    report = json.loads(solve.stdout)
    assert report["iterations"] == 12
    assert set(report["val"]) == {"15"}

    greedy = run("solve", str(instance), "--init", "greedy")
    assert json.loads(greedy.stdout)["iterations"] == 11


def test_solve_emits_trace(tmp_path):
    instance = tmp_path / "p2.dmdp"
    run("gen", "--n", "2", "-o", str(instance))
    trace_path = tmp_path / "trace.jsonl"
    run("solve", str(instance), "--trace", str(trace_path))
    lines = trace_path.read_text().splitlines()
    assert len(lines) == 6
    first = json.loads(lines[0])
    assert first["k"] == 0
    assert len(first["policy"]) == 4
    last = json.loads(lines[-1])
    assert last["switched"] == []
    assert last["val"] == ["8", "8", "8", "8"]


def test_solve_two_cycle(tmp_path):
    f = tmp_path / "two.dmdp"
    f.write_text("vertex a\nvertex b\nedge a b 1\nedge b a 1\n")
    report = json.loads(run("solve", str(f)).stdout)
    assert report["iterations"] == 1
    assert report["val"] == ["1", "1"]


def test_usage_and_parse_errors(tmp_path):
    assert run("gen", "--n", "0").returncode == 2
    assert run("solve", "/nonexistent/file").returncode == 2
    bad = tmp_path / "bad.dmdp"
    bad.write_text("vertex a\nedge a zzz 1\n")
    proc = run("solve", str(bad))
    assert proc.returncode == 2
    assert "line 2" in proc.stderr


def test_verify_stream():
    proc = run("verify", "--n-max", "12")
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 12
    for expected_n, line in enumerate(lines, start=1):
        report = json.loads(line)
        assert report["n"] == expected_n
        assert report["matched"] is True
        assert report["ok"] is True
        assert report["iterations"] == report["expected"]
        assert report["first_divergence"] is None
        assert report["transitions"]["all_pass"] is True
        assert report["inequalities"]["all_hold"] is True
        structure = report["structure"]
        assert structure["edges"] == structure["edges_formula"]
        assert structure["edge_formulas_agree"] is False  # surfaced on purpose

    greedy = run("verify", "--n-max", "6", "--init", "greedy")
    assert greedy.returncode == 0

    assert run("verify", "--n-max", "40").returncode == 0


def test_fuzz_summary():
    proc = run("fuzz", "--instances", "40", "--n", "8", "--seed", "42",
               "--check-conjecture")
    assert proc.returncode == 0
    summary = json.loads(proc.stdout)
    assert summary["instances"] == 40
    assert summary["value_mismatches"] == 0
    assert summary["findings"] == []

    empty = json.loads(run("fuzz", "--instances", "0").stdout)
    assert empty["instances"] == 0
    assert empty["value_mismatches"] == 0


def test_fuzz_is_deterministic():
    a = run("fuzz", "--instances", "15", "--seed", "7").stdout
    b = run("fuzz", "--instances", "15", "--seed", "7").stdout
    assert a == b


def test_bench_csv():
    proc = run("bench", "--n", "3", "--n", "10")
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "n,vertices,edges,max_weight,size_bits,iterations,expected,wall_time_ms"
    row3 = lines[1].split(",")
    assert row3[:7] == ["3", "6", "24", "16", "78", "12", "12"]
    row10 = lines[2].split(",")
    assert row10[0] == "10"
    assert row10[5] == row10[6] == "82"

    again = run("bench", "--n", "3", "--n", "10").stdout.strip().splitlines()
    assert [r.rsplit(",", 1)[0] for r in again] == [r.rsplit(",", 1)[0] for r in lines]


def test_export_dot(tmp_path):
    instance = tmp_path / "p3.dmdp"
    run("gen", "--n", "3", "-o", str(instance))
    plain = run("export-dot", str(instance)).stdout
    assert plain.startswith("digraph")
    assert "style=bold" not in plain

    final = run("export-dot", str(instance), "--highlight", "final").stdout
    assert final.count("style=bold") == 6
    assert '"t3" -> "t3" [label="15", style=bold]' in final
