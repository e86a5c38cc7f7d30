"""Command-line behavior: records, formats, determinism, exit codes."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from qlsat.cli import main
from qlsat.generate import instance_seed_sequence

REFERENCE_CNF = "p cnf 2 2\n-1 0\n-2 0\n"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def jsonl(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line]


def test_generate_two_variable_reference_files(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys,
        "generate",
        "--out-dir", str(tmp_path),
        "--ensemble", "max-constrained-1sat",
        "--n", "2",
        "--planted", "0",
    )
    assert code == 0
    assert (tmp_path / "inst-00000.cnf").read_text() == REFERENCE_CNF
    meta = json.loads((tmp_path / "inst-00000.json").read_text())
    assert meta["kind"] == "max-constrained-1sat"
    assert meta["planted"] == 0
    assert meta["generator"] == "numpy-pcg64"
    (record,) = jsonl(out)
    assert record["record"] == "generated"
    assert record["soluble"] is True
    assert record["solution_count"] == 1


def test_generate_is_reproducible_byte_for_byte(tmp_path, capsys):
    args = ["generate", "--ensemble", "random", "--n", "7", "--m", "21",
            "--trials", "3", "--seed", "12"]
    code_a, out_a, _ = run_cli(capsys, *args, "--out-dir", str(tmp_path / "a"))
    code_b, out_b, _ = run_cli(capsys, *args, "--out-dir", str(tmp_path / "b"))
    assert code_a == code_b == 0
    for i in range(3):
        name = f"inst-{i:05d}"
        a_dir, b_dir = tmp_path / "a", tmp_path / "b"
        assert (a_dir / f"{name}.cnf").read_bytes() == (b_dir / f"{name}.cnf").read_bytes()
        assert (a_dir / f"{name}.json").read_bytes() == (b_dir / f"{name}.json").read_bytes()
    # summary records differ only in the embedded paths
    for rec_a, rec_b in zip(jsonl(out_a), jsonl(out_b)):
        rec_a.pop("path"), rec_b.pop("path")
        assert rec_a == rec_b


def test_generate_check_soluble_flag(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys,
        "generate", "--out-dir", str(tmp_path),
        "--ensemble", "random", "--n", "6", "--m", "12",
        "--trials", "2", "--check-soluble",
    )
    assert code == 0
    for record in jsonl(out):
        assert record["soluble"] in (True, False)


def test_run_inline_records(capsys):
    code, out, _ = run_cli(
        capsys,
        "run", "--ensemble", "random-soluble",
        "--n", "6", "--m", "18", "--trials", "3", "--seed", "5",
    )
    assert code == 0
    records = jsonl(out)
    assert len(records) == 3
    for i, record in enumerate(records):
        assert record["record"] == "run"
        assert record["config"]["seed"] == 5
        assert record["config"]["engine"] == "full"
        assert record["config"]["policy"]["kind"] == "simple-threshold"
        assert record["instance"]["index"] == i
        result = record["result"]
        assert result["engine"] == "full"
        assert len(result["p_soln_by_step"]) == result["steps"] + 1
        assert result["final_p"] == result["p_soln_by_step"][-1]
        # soluble ensemble: a best step exists and matches the trace
        costs = [
            j / p
            for j, p in enumerate(result["p_soln_by_step"])
            if j >= 1 and p > 0
        ]
        assert result["best_cost"] == pytest.approx(min(costs), rel=1e-12)


def test_run_is_deterministic(capsys):
    args = ["run", "--ensemble", "random", "--n", "8", "--m", "24", "--trials", "2",
            "--seed", "3", "--policy", "neighborhood"]
    code_a, out_a, _ = run_cli(capsys, *args)
    code_b, out_b, _ = run_cli(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_csv_projection_matches_jsonl(capsys):
    args = ["run", "--ensemble", "random-soluble", "--n", "6", "--m", "12",
            "--trials", "2", "--seed", "8"]
    _, out_json, _ = run_cli(capsys, *args)
    code, out_csv, _ = run_cli(capsys, *args, "--format", "csv")
    assert code == 0
    lines = out_csv.splitlines()
    header = lines[0].split(",")
    assert header[0] == "record"
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    records = jsonl(out_json)
    assert len(rows) == len(records)
    for row, record in zip(rows, records):
        assert float(row["result.best_cost"]) == record["result"]["best_cost"]
        assert int(row["result.best_j"]) == record["result"]["best_j"]
        trace = [float(v) for v in row["result.p_soln_by_step"].split(";")]
        assert trace == record["result"]["p_soln_by_step"]
        assert row["config.ensemble"] == "random-soluble"
        assert row["config.policy.c_start"] == ""


def test_run_zero_trials_emits_nothing(capsys):
    code, out, err = run_cli(
        capsys, "run", "--ensemble", "random", "--n", "5", "--m", "10", "--trials", "0"
    )
    assert code == 0
    assert out == ""
    assert err == ""


def test_run_from_files_matches_inline(tmp_path, capsys):
    common = ["--ensemble", "random-soluble", "--n", "7", "--m", "21", "--seed", "31"]
    code, _, _ = run_cli(
        capsys, "generate", "--out-dir", str(tmp_path), *common, "--trials", "2"
    )
    assert code == 0
    paths = sorted(str(p) for p in tmp_path.glob("*.cnf"))
    code, out_files, _ = run_cli(capsys, "run", *paths, "--policy", "neighborhood")
    assert code == 0
    code, out_inline, _ = run_cli(
        capsys, "run", *common, "--trials", "2", "--policy", "neighborhood"
    )
    assert code == 0
    from_files = jsonl(out_files)
    inline = jsonl(out_inline)
    assert [r["instance"]["source"] for r in from_files] == paths
    for rec_f, rec_i in zip(from_files, inline):
        assert rec_f["result"] == rec_i["result"]


def test_run_keeps_going_past_a_bad_file(tmp_path, capsys):
    good = tmp_path / "good.cnf"
    good.write_text(REFERENCE_CNF)
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 2 2\n-1 0\n")
    code, out, _ = run_cli(capsys, "run", str(bad), str(good))
    assert code == 0
    records = jsonl(out)
    assert "error" in records[0] and "result" not in records[0]
    assert records[1]["result"]["best_j"] == 1
    assert records[1]["result"]["best_cost"] == pytest.approx(1.0, abs=1e-12)


def test_run_compact_engine_inline(capsys):
    code, out, _ = run_cli(
        capsys,
        "run", "--engine", "compact", "--n", "40", "--policy", "neighborhood",
    )
    assert code == 0
    (record,) = jsonl(out)
    assert record["config"]["ensemble"] == "max-constrained-1sat"
    assert record["config"]["k"] == 1
    result = record["result"]
    assert result["engine"] == "compact"
    assert result["steps"] == 21
    assert len(result["p_soln_by_step"]) == 22


def test_run_histograms_flag(capsys):
    code, out, _ = run_cli(
        capsys,
        "run", "--engine", "compact", "--n", "10", "--histograms",
    )
    assert code == 0
    (record,) = jsonl(out)
    hists = record["result"]["histograms"]
    assert len(hists) == record["result"]["steps"] + 1
    for hist in hists:
        assert sum(hist) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize(
    "argv",
    [
        ["run"],  # inline batch without an ensemble
        ["run", "--ensemble", "bogus", "--n", "5", "--m", "10"],
        ["run", "--engine", "compact", "--n", "8", "--alpha", "2"],
        ["run", "--engine", "compact", "--n", "8", "--ensemble", "random", "--m", "8"],
        ["run", "--engine", "compact", "--n", "8", "--k", "3"],
        ["sweep", "--axis", "n", "--values", "4", "--engine", "compact", "--k", "3"],
        ["sweep", "--axis", "n", "--values", "4:2:1", "--engine", "compact"],
        ["sweep", "--axis", "m-over-n", "--values", "4", "--ensemble", "random"],
        ["sweep", "--axis", "n", "--values", "5.5", "--engine", "compact"],
        ["generate", "--out-dir", "x", "--ensemble", "random", "--n", "5"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_one(argv, capsys, tmp_path):
    argv = [a if a != "x" else str(tmp_path) for a in argv]
    code, _, err = run_cli(capsys, *argv)
    assert code == 1
    assert "error" in err.lower()


def test_capacity_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "run", "--ensemble", "random", "--n", "30", "--m", "60"
    )
    assert code == 3
    assert "capacity" in err.lower()


def test_full_limit_flag_tightens_the_guard(capsys):
    code, _, _ = run_cli(
        capsys,
        "run", "--ensemble", "random", "--n", "12", "--m", "24", "--full-limit", "10",
    )
    assert code == 3


def test_verify_passes_by_default(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith(("PASS", "SKIP")) for line in lines)
    assert any(line.startswith("PASS unitarity") for line in lines)
    assert any("u_1 = 0.273438" in line for line in lines)
    assert any("u_1 = 0.176197" in line for line in lines)


def test_verify_flags_an_injected_fault(capsys):
    code, out, _ = run_cli(capsys, "verify", "--alpha", "2", "--dense-limit", "5")
    assert code == 2
    lines = out.splitlines()
    assert any(line.startswith("FAIL mixing-table-n2") for line in lines)
    # the operator stays orthogonal under any split point
    assert any(line.startswith("PASS unitarity") for line in lines)
    assert any(line.startswith("SKIP") for line in lines)


def test_verify_rejects_impossible_alpha(capsys):
    code, _, err = run_cli(capsys, "verify", "--alpha", "7", "--dense-limit", "5")
    assert code == 1
    assert "alpha" in err


def test_sweep_value_ranges_and_compact_axis(capsys):
    code, out, _ = run_cli(
        capsys,
        "sweep", "--axis", "n", "--values", "4:8:2", "--engine", "compact",
        "--policy", "neighborhood",
    )
    assert code == 0
    records = jsonl(out)
    assert [r["point"]["n"] for r in records] == [4, 6, 8]
    assert [r["point"]["m"] for r in records] == [4, 6, 8]
    for record in records:
        result = record["result"]
        assert result["steps"] == record["point"]["n"] // 2 + 1
        assert result["solved_trials"] == 1
        assert result["mean_cost"] > 0


def test_sweep_m_ratio_on_the_n_axis(capsys):
    code, out, _ = run_cli(
        capsys,
        "sweep", "--axis", "n", "--values", "6,8", "--m-ratio", "2.5",
        "--ensemble", "random", "--trials", "2", "--seed", "1",
    )
    assert code == 0
    records = jsonl(out)
    assert [r["point"]["m"] for r in records] == [15, 20]


def test_single_point_sweep_matches_run_aggregation(capsys):
    code, out_sweep, _ = run_cli(
        capsys,
        "sweep", "--axis", "m-over-n", "--values", "4", "--n", "8",
        "--ensemble", "random-soluble", "--trials", "5", "--seed", "42",
    )
    assert code == 0
    (point,) = jsonl(out_sweep)
    assert point["point"]["m"] == 32
    point_seed = instance_seed_sequence(42, 0)
    code, out_run, _ = run_cli(
        capsys,
        "run", "--ensemble", "random-soluble", "--n", "8", "--m", "32",
        "--trials", "5", "--seed", str(point_seed),
    )
    assert code == 0
    runs = jsonl(out_run)
    costs = [r["result"]["best_cost"] for r in runs]
    finals = [r["result"]["final_p"] for r in runs]
    result = point["result"]
    assert result["solved_trials"] == 5
    assert result["mean_cost"] == pytest.approx(np.mean(costs), rel=1e-12)
    assert result["mean_final_p"] == pytest.approx(np.mean(finals), rel=1e-12)
    assert result["fixed_step_cost"] == pytest.approx(
        result["steps"] / np.mean(finals), rel=1e-12
    )
    assert result["sem_cost"] == pytest.approx(
        np.std(costs, ddof=1) / math.sqrt(5), rel=1e-12
    )


def test_sweep_records_point_errors_and_continues(capsys):
    # m = 36 exceeds the 32 distinct conflict patterns at n=4, k=3
    code, out, _ = run_cli(
        capsys,
        "sweep", "--axis", "m-over-n", "--values", "7,9", "--n", "4",
        "--ensemble", "random", "--trials", "1", "--seed", "2",
    )
    assert code == 0
    records = jsonl(out)
    assert "result" in records[0]
    assert "error" in records[1] and "result" not in records[1]


def test_thread_count_does_not_change_results(capsys):
    base = ["run", "--ensemble", "random", "--n", "7", "--m", "14",
            "--trials", "4", "--seed", "17"]
    _, out_one, _ = run_cli(capsys, *base, "--threads", "1")
    code, out_two, _ = run_cli(capsys, *base, "--threads", "2")
    assert code == 0
    ones_ = jsonl(out_one)
    twos = jsonl(out_two)
    for rec in ones_ + twos:
        del rec["config"]["threads"]
    assert ones_ == twos


def test_environment_overrides(capsys, monkeypatch):
    monkeypatch.setenv("QLSAT_FORMAT", "csv")
    monkeypatch.setenv("QLSAT_SEED", "9")
    code, out, _ = run_cli(
        capsys, "run", "--ensemble", "random", "--n", "5", "--m", "10"
    )
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert header[0] == "record"
    row = dict(zip(header, out.splitlines()[1].split(",")))
    assert row["config.seed"] == "9"
    # explicit flags still win over the environment
    code, out, _ = run_cli(
        capsys,
        "run", "--ensemble", "random", "--n", "5", "--m", "10",
        "--format", "jsonl", "--seed", "4",
    )
    assert code == 0
    assert jsonl(out)[0]["config"]["seed"] == 4


def test_output_file_destination(tmp_path, capsys):
    target = tmp_path / "records.jsonl"
    code, out, _ = run_cli(
        capsys,
        "run", "--ensemble", "random", "--n", "5", "--m", "10",
        "--out", str(target),
    )
    assert code == 0
    assert out == ""
    assert jsonl(target.read_text())[0]["record"] == "run"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qlsat", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "generate" in proc.stdout and "verify" in proc.stdout
    proc = subprocess.run(
        [sys.executable, "-m", "qlsat"], capture_output=True, text=True
    )
    assert proc.returncode == 1
