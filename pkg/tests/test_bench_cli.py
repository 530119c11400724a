"""Command-line contract: output text, exit codes, CSV shapes, and the
serial/concurrent reproducibility of the benchmark driver."""

import csv
import json
import os

import numpy as np
import pytest
from click.testing import CliRunner

from cfrbench.bench_cli import (MATRIX_ALGORITHMS, MATRIX_GAMES, main,
                                matrix_runs)
from cfrbench.evaluation import BoundInput, theorem_bound
from cfrbench.game_core import StrategyProfile
from cfrbench.games import load_game
from cfrbench.schedules import builtin_schedule, weight_curve
from cfrbench.solver import SolverConfig, run


def invoke(*args):
    return CliRunner().invoke(main, [str(a) for a in args],
                              catch_exceptions=False)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# ───────────────────────────────── stats ───────────────────────────────────

def test_stats_reference_match():
    result = invoke("stats", "kuhn")
    assert result.exit_code == 0
    assert result.output == "58 12 30 (match)\n"


def test_stats_sized_spelling_and_inline_suffix():
    flag = invoke("stats", "goofspiel", "--x", 5)
    inline = invoke("stats", "goofspiel-5")
    assert flag.exit_code == inline.exit_code == 0
    assert flag.output == inline.output == "2.7e4 3.3e3 1.4e4 (match)\n"


def test_stats_game_without_reference_row():
    result = invoke("stats", "blotto")
    assert result.exit_code == 0
    assert result.output == "4.6e2 2 4.4e2\n"
    assert "match" not in result.output


def test_stats_unknown_game_is_usage_error():
    result = invoke("stats", "go_fish")
    assert result.exit_code == 2
    assert "unknown game" in result.stderr


def test_stats_bad_params_are_validation_errors():
    assert invoke("stats", "kuhn", "--x", 3).exit_code == 3
    assert invoke("stats", "goofspiel", "--x", 99).exit_code == 3


# ───────────────────────────────── solve ───────────────────────────────────

def test_solve_writes_convergence_csv(tmp_path):
    out = tmp_path / "conv.csv"
    result = invoke("solve", "--game", "kuhn", "--variant", "dcfr",
                    "--schedule", "hs30", "--iters", 40,
                    "--checkpoint-every", 10, "--out", out)
    assert result.exit_code == 0
    assert "kuhn dcfr/hs30: final exploitability" in result.output
    rows = read_rows(out)
    assert rows[0] == ["iteration", "exploitability", "elapsed_ms"]
    assert [r[0] for r in rows[1:]] == ["10", "20", "30", "40"]
    for r in rows[1:]:
        # repr-printed floats round-trip exactly
        assert repr(float(r[1])) == r[1]
        assert float(r[1]) >= 0.0
    elapsed = [float(r[2]) for r in rows[1:]]
    assert elapsed == sorted(elapsed) and elapsed[-1] > 0.0


def test_solve_default_output_name(tmp_path):
    runner = CliRunner()
    with runner.isolated_filesystem(temp_dir=tmp_path):
        result = runner.invoke(
            main, ["solve", "--game", "kuhn", "--variant", "cfr",
                   "--iters", "5"], catch_exceptions=False)
        assert result.exit_code == 0
        # the companion schedule lands in the default file name
        assert os.path.exists("kuhn_cfr_uniform.csv")


def test_solve_profile_roundtrips_through_exploit(tmp_path):
    conv = tmp_path / "conv.csv"
    prof = tmp_path / "avg.json"
    report = tmp_path / "report.csv"
    solved = invoke("solve", "--game", "kuhn", "--variant", "pcfr_plus",
                    "--schedule", "hs30", "--iters", 200,
                    "--checkpoint-every", 200, "--out", conv,
                    "--save-profile", prof)
    assert solved.exit_code == 0
    final = float(read_rows(conv)[-1][1])

    result = invoke("exploit", "--game", "kuhn", "--profile", prof,
                    "--out", report)
    assert result.exit_code == 0
    assert "exploitability:" in result.output
    rows = read_rows(report)
    assert rows[0] == ["br_value_p0", "br_value_p1", "exploitability"]
    assert float(rows[1][2]) == pytest.approx(final, abs=1e-12)


def test_solve_unknown_schedule_is_validation_error(tmp_path):
    result = invoke("solve", "--game", "kuhn", "--variant", "dcfr",
                    "--schedule", "hs300", "--iters", 5,
                    "--out", tmp_path / "x.csv")
    assert result.exit_code == 3
    assert "hs300" in result.stderr


# ──────────────────────────────── exploit ──────────────────────────────────

def test_exploit_missing_profile_is_io_error(tmp_path):
    result = invoke("exploit", "--game", "kuhn",
                    "--profile", tmp_path / "absent.json")
    assert result.exit_code == 4
    assert "I/O error" in result.stderr


def test_exploit_foreign_profile_is_validation_error(tmp_path):
    path = tmp_path / "blotto.json"
    StrategyProfile.uniform(load_game("blotto")).save(path)
    result = invoke("exploit", "--game", "kuhn", "--profile", path)
    assert result.exit_code == 3


# ───────────────────────────────── bound ───────────────────────────────────

def test_bound_reports_inputs_and_guarantees(tmp_path):
    dump = tmp_path / "schedule.csv"
    result = invoke("bound", "--game", "kuhn", "--schedule", "hs30",
                    "--iters", 1000, "--dump-schedule", dump)
    assert result.exit_code == 0
    assert "Δ=4.0 |I|=12 |A|=2 U=30.0 T=1000" in result.output
    expected = theorem_bound(BoundInput(4.0, 12, 2, 30.0, 1000), "hs_dcfr")
    printed = [ln for ln in result.output.splitlines()
               if ln.startswith("hs_dcfr")][0]
    assert float(printed.split()[-1]) == expected

    rows = read_rows(dump)
    assert rows[0] == ["t", "alpha", "beta", "gamma", "weight"]
    assert len(rows) == 1001
    assert rows[-1][0] == "1000"
    assert [float(v) for v in rows[-1][1:4]] == [4.0, -3.0, 25.0]
    dumped = np.array([float(r[4]) for r in rows[1:]])
    np.testing.assert_array_equal(
        dumped, weight_curve(builtin_schedule("hs30").gamma, 1000))


# ───────────────────────────────── bench ───────────────────────────────────

BENCH_RUNS = [
    {"game": "kuhn", "variant": "cfr", "schedule": "uniform",
     "iterations": 30, "checkpoint_every": 10, "out": "a.csv"},
    {"game": "kuhn", "variant": "dcfr", "schedule": "hs30",
     "iterations": 30, "checkpoint_every": 10, "out": "b.csv"},
    {"game": "kuhn", "variant": "pcfr_plus", "schedule": "hs15",
     "iterations": 30, "checkpoint_every": 10, "out": "c.csv"},
]


def write_config(tmp_path, runs):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"runs": runs}))
    return path


def test_bench_runs_config_and_summarizes(tmp_path, kuhn):
    config = write_config(tmp_path, BENCH_RUNS)
    out_dir = tmp_path / "out"
    result = invoke("bench", config, "--out-dir", out_dir, "--workers", 1)
    assert result.exit_code == 0
    assert "3/3 runs completed" in result.output

    rows = read_rows(out_dir / "b.csv")
    assert [r[0] for r in rows[1:]] == ["10", "20", "30"]
    assert all(r[2] == "0.0" for r in rows[1:])   # timing off by default

    def final(variant, schedule):
        res = run(kuhn, SolverConfig(variant=variant, schedule=schedule,
                                     iterations=30, checkpoint_every=10))
        return res.final_exploitability

    base = final("cfr", "uniform")
    sched = min(final("dcfr", "hs30"), final("pcfr_plus", "hs15"))
    srows = read_rows(out_dir / "summary.csv")
    assert srows[0] == ["game", "min_baseline", "min_scheduled", "oom"]
    assert srows[1][0] == "kuhn"
    assert float(srows[1][1]) == base
    assert float(srows[1][2]) == sched
    assert float(srows[1][3]) == pytest.approx(np.log10(base / sched),
                                               abs=1e-12)


def test_bench_concurrent_output_is_byte_identical(tmp_path):
    config = write_config(tmp_path, BENCH_RUNS)
    serial, parallel = tmp_path / "serial", tmp_path / "parallel"
    assert invoke("bench", config, "--out-dir", serial,
                  "--workers", 1).exit_code == 0
    assert invoke("bench", config, "--out-dir", parallel,
                  "--workers", 3).exit_code == 0
    for name in ("a.csv", "b.csv", "c.csv", "summary.csv"):
        assert ((serial / name).read_bytes()
                == (parallel / name).read_bytes()), name


def test_bench_empty_config(tmp_path):
    config = write_config(tmp_path, [])
    out_dir = tmp_path / "empty"
    result = invoke("bench", config, "--out-dir", out_dir)
    assert result.exit_code == 0
    assert "0/0 runs completed" in result.output
    assert read_rows(out_dir / "summary.csv") == [
        ["game", "min_baseline", "min_scheduled", "oom"]]


def test_bench_rejects_duplicate_outputs(tmp_path):
    runs = [dict(BENCH_RUNS[0]), dict(BENCH_RUNS[1])]
    runs[1]["out"] = runs[0]["out"]
    result = invoke("bench", write_config(tmp_path, runs),
                    "--out-dir", tmp_path / "d")
    assert result.exit_code == 3
    assert "already used" in result.stderr


def test_bench_rejects_unknown_keys(tmp_path):
    runs = [dict(BENCH_RUNS[0], varian="cfr")]
    del runs[0]["variant"]
    runs[0]["variant"] = "cfr"
    result = invoke("bench", write_config(tmp_path, runs),
                    "--out-dir", tmp_path / "d")
    assert result.exit_code == 3
    assert "varian" in result.stderr and "allowed keys" in result.stderr


def test_bench_requires_exactly_one_source(tmp_path):
    assert invoke("bench").exit_code == 2
    config = write_config(tmp_path, [])
    assert invoke("bench", config, "--matrix").exit_code == 2


def test_bench_garbled_config_is_validation_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{'runs': not json")
    assert invoke("bench", bad).exit_code == 3


def test_bench_directory_config_is_io_error(tmp_path):
    assert invoke("bench", tmp_path).exit_code in (2, 4)


def test_bench_partial_failure_continues(tmp_path):
    out_dir = tmp_path / "out"
    os.makedirs(out_dir / "blocked.csv")    # a directory where a CSV must go
    runs = [dict(BENCH_RUNS[0]),
            dict(BENCH_RUNS[1], out="blocked.csv")]
    result = invoke("bench", write_config(tmp_path, runs),
                    "--out-dir", out_dir, "--workers", 1)
    assert result.exit_code == 1
    assert "1/2 runs completed" in result.output
    assert "run failed: blocked.csv" in result.stderr
    assert (out_dir / "a.csv").exists()
    # the failed run leaves an empty summary cell, not a bogus number
    srows = read_rows(out_dir / "summary.csv")
    assert srows[1][1] != "" and srows[1][2] == ""


def test_emit_matrix_shape(tmp_path):
    path = tmp_path / "matrix.json"
    result = invoke("bench", "--emit-matrix", path, "--iters", 17)
    assert result.exit_code == 0
    doc = json.loads(path.read_text())
    runs = doc["runs"]
    assert len(runs) == len(MATRIX_GAMES) * len(MATRIX_ALGORITHMS) == 80
    assert runs == matrix_runs(17, 10)
    outs = {r["out"] for r in runs}
    assert len(outs) == 80
    first = runs[0]
    assert first["iterations"] == 17
    assert first["game"] == "kuhn" and first["variant"] == "cfr"
