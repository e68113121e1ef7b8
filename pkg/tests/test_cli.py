import json

import numpy as np
import pytest

from maxkcut.cli import main

K3_TEXT = "3 3\n1 2 1\n2 3 1\n1 3 1\n"


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text(K3_TEXT)
    return path


def _solve(k3_file, tmp_path, *extra):
    out = tmp_path / "out"
    code = main(
        ["solve", "--graph", str(k3_file), "--k", "3", "--seed", "1", "--out", str(out), *extra]
    )
    return code, out


def test_solve_writes_solution(k3_file, tmp_path, capsys):
    code, out = _solve(k3_file, tmp_path)
    assert code == 0
    doc = json.loads((out / "solution.json").read_text())
    assert abs(doc["objective"] - 3.0) < 1e-3
    assert doc["n"] == 3 and doc["k"] == 3
    captured = capsys.readouterr().out
    assert "seed: 1" in captured


def test_solve_json_output(k3_file, tmp_path, capsys):
    code, _ = _solve(k3_file, tmp_path, "--json")
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["objective"] - 3.0) < 1e-3


def test_solve_missing_file(tmp_path, capsys):
    code = main(["solve", "--graph", str(tmp_path / "nope.txt"), "--k", "3"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_solve_bad_graph_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n1 1 1\n")
    code = main(["solve", "--graph", str(bad), "--k", "3"])
    assert code == 2
    assert "line 2" in capsys.readouterr().err


def test_solve_from_gram(k3_file, tmp_path):
    gram = tmp_path / "gram.txt"
    gram.write_text("3\n1 -0.5 -0.5\n-0.5 1 -0.5\n-0.5 -0.5 1\n")
    out = tmp_path / "out"
    code = main(
        ["solve", "--graph", str(k3_file), "--k", "3", "--gram", str(gram), "--out", str(out)]
    )
    assert code == 0
    doc = json.loads((out / "solution.json").read_text())
    assert abs(doc["objective"] - 3.0) < 1e-9


@pytest.mark.parametrize(
    "scheme,trials,lo,hi",
    [
        # 3 edges x 0.836008 = 2.508 expected for the disc scheme; the
        # Frieze-Jerrum scheme matches it distributionally at k = 3
        ("disc", 100_000, 2.498, 2.518),
        ("fj", 100_000, 2.49, 2.52),
        ("uniform", 20_000, 1.94, 2.06),
    ],
)
def test_round_schemes_mean(k3_file, tmp_path, scheme, trials, lo, hi, capsys):
    code, out = _solve(k3_file, tmp_path)
    assert code == 0
    capsys.readouterr()  # drop the solve output
    code = main(
        [
            "round",
            "--graph",
            str(k3_file),
            "--solution",
            str(out / "solution.json"),
            "--scheme",
            scheme,
            *(["--k", "3"] if scheme == "uniform" else []),
            "--trials",
            str(trials),
            "--seed",
            "3",
            "--out",
            str(out),
            "--json",
        ]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert lo < doc["mean"] < hi
    part = json.loads((out / "partition.json").read_text())
    assert part["scheme"] == scheme
    assert len(part["labels"]) == 3
    trials_lines = (out / "trials.csv").read_text().strip().splitlines()
    assert trials_lines[0] == "trial,value"
    assert len(trials_lines) == trials + 1


def test_round_unknown_scheme(k3_file, tmp_path):
    code = main(
        ["round", "--graph", str(k3_file), "--scheme", "zigzag", "--k", "3"]
    )
    assert code == 2


def test_round_uniform_requires_k(k3_file, capsys):
    code = main(["round", "--graph", str(k3_file), "--scheme", "uniform"])
    assert code == 2
    assert "--k" in capsys.readouterr().err


def test_round_k_mismatch(k3_file, tmp_path, capsys):
    code, out = _solve(k3_file, tmp_path)
    assert code == 0
    code = main(
        [
            "round",
            "--graph",
            str(k3_file),
            "--solution",
            str(out / "solution.json"),
            "--scheme",
            "disc",
            "--k",
            "4",
            "--out",
            str(out),
        ]
    )
    assert code == 2
    assert "mismatch" in capsys.readouterr().err


def test_round_deterministic(k3_file, tmp_path):
    code, out = _solve(k3_file, tmp_path)
    out2 = tmp_path / "out2"
    args = [
        "round",
        "--graph",
        str(k3_file),
        "--solution",
        str(out / "solution.json"),
        "--scheme",
        "disc",
        "--trials",
        "500",
        "--seed",
        "9",
    ]
    assert main(args + ["--out", str(out)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert (out / "partition.json").read_text() == (out2 / "partition.json").read_text()
    assert (out / "trials.csv").read_text() == (out2 / "trials.csv").read_text()


def test_ratio_table_values(tmp_path, capsys):
    out = tmp_path / "rt"
    code = main(["ratio-table", "--k", "3,4,5,10", "--out", str(out), "--json"])
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    got = {row["k"]: row["phi_k"] for row in rows}
    assert abs(got[3] - 0.836008) < 1e-6
    assert abs(got[5] - 0.862440) < 1e-6
    assert abs(got[10] - 0.915885) < 1e-6
    csv_text = (out / "ratio_table.csv").read_text()
    assert csv_text.splitlines()[0] == "k,phi_k,uniform_baseline"
    assert (out / "ratio_table.json").exists()


def test_ratio_table_refs(tmp_path, capsys):
    code = main(["ratio-table", "--k", "3", "--refs", "--out", str(tmp_path), "--json"])
    assert code == 0
    row = json.loads(capsys.readouterr().out)[0]
    assert row["fj_ref"] == 0.832718
    assert row["dkpw_ref"] == 0.836008


def test_ratio_table_rejects_k2(tmp_path, capsys):
    code = main(["ratio-table", "--k", "2", "--out", str(tmp_path)])
    assert code == 2
    assert "k >= 3" in capsys.readouterr().err


def test_verify_modk_check(capsys):
    code = main(["verify", "--check", "modk-normalization"])
    assert code == 0
    assert "PASS modk-normalization" in capsys.readouterr().out


def test_verify_point_check(capsys):
    code = main(
        [
            "verify",
            "--r",
            "0.5",
            "--delta",
            "1.5708",
            "--samples",
            "200000",
            "--seed",
            "2",
        ]
    )
    assert code == 0
    assert "PASS point" in capsys.readouterr().out


def test_verify_point_needs_both_flags(capsys):
    code = main(["verify", "--check", "point", "--r", "0.5"])
    assert code == 2


def test_verify_cdf_agreement_small(tmp_path, capsys):
    code = main(
        [
            "verify",
            "--check",
            "cdf-agreement",
            "--samples",
            "150000",
            "--seed",
            "0",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    doc = json.loads((tmp_path / "verify.json").read_text())
    assert doc["passed"] is True


def test_verify_failure_exit_code(capsys):
    # impossible tolerance forces the statistical check to fail honestly
    code = main(
        ["verify", "--check", "cdf-agreement", "--samples", "20000", "--tol", "1e-6"]
    )
    assert code == 1
    assert "FAIL cdf-agreement" in capsys.readouterr().out


def test_verify_k3_equivalence_small(capsys):
    code = main(
        ["verify", "--check", "k3-equivalence", "--samples", "100000", "--tol", "0.01"]
    )
    assert code == 0
    assert "PASS k3-equivalence" in capsys.readouterr().out


def test_pipeline(k3_file, tmp_path, capsys):
    out = tmp_path / "pipe"
    code = main(
        [
            "pipeline",
            "--graph",
            str(k3_file),
            "--k",
            "3",
            "--scheme",
            "disc",
            "--trials",
            "5000",
            "--seed",
            "4",
            "--out",
            str(out),
            "--json",
        ]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["objective"] - 3.0) < 1e-3
    assert doc["best"] == 3.0
    assert 0.8 < doc["best_over_objective"] <= 1.001
    for name in ("solution.json", "partition.json", "trials.csv"):
        assert (out / name).exists()


def test_usage_error_exit_code():
    assert main(["solve"]) == 2
    assert main(["no-such-command"]) == 2
