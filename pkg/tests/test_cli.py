import json
import os
import subprocess
import sys

import numpy as np
import pytest

from quasisym.cli import EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_OK, dumps, main, parse_t_exact


def run(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "quasisym", *map(str, args)], capture_output=True, text=True, cwd=cwd
    )


def test_fit_report(data_dir, tmp_path):
    out = tmp_path / "fit.json"
    assert main(["fit", str(data_dir / "vision.csv"), "--t", "0", "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1
    assert rep["model"] == {"family": "QS", "t": 0.0, "constraint": "last_zero"}
    fit = rep["fit"]
    assert fit["g2"] == pytest.approx(7.27076, abs=1e-3)
    assert fit["p_value"] == pytest.approx(0.06375, abs=5e-5)
    assert fit["df"] == 3
    assert fit["converged"] and fit["hessian_negdef"]
    assert fit["expected"][0][1] == pytest.approx(263.38, abs=0.02)
    assert fit["membership_residual"] < 1e-12
    assert len(rep["input"]["sha256"]) == 64
    assert "timing_s" not in rep


def test_fit_accepts_fraction_and_qsi(data_dir, capsys):
    assert main(["fit", str(data_dir / "sim_a.csv"), "--t", "0", "--family", "qsi"]) == EXIT_OK
    fit = json.loads(capsys.readouterr().out)["fit"]
    assert fit["g2"] == pytest.approx(1.3600, abs=1e-3)
    assert fit["df"] == 4
    assert main(["fit", str(data_dir / "primes.csv"), "--t", "2/3", "--constraint", "wmean"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["model"]["t"] == pytest.approx(2 / 3, abs=1e-10)


def test_reports_are_byte_identical(data_dir, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        proc = run("fit", data_dir / "vision.csv", "--t", "0.5", "--out", path)
        assert proc.returncode == 0, proc.stderr
    assert a.read_bytes() == b.read_bytes()


def test_scan_csv(data_dir, capsys):
    assert main(["scan", str(data_dir / "sim_a.csv"), "--grid", "11", "--method", "full"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,loglik,g2,p_value"
    assert len(lines) == 12
    assert float(lines[1].split(",")[2]) == pytest.approx(0.18572, abs=1e-3)


def test_consensus_report(data_dir, capsys):
    args = ["consensus", str(data_dir / "sim_a.csv"), str(data_dir / "sim_b.csv"), "--method", "full"]
    assert main(args) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["interval"][0] == pytest.approx(0.061, abs=0.005)
    assert rep["interval"][1] == pytest.approx(0.302, abs=0.005)
    assert rep["crossing"] == pytest.approx(0.137, abs=0.005)
    assert len(rep["fits_at_crossing"]) == 2


def test_algebra_ops(data_dir, capsys):
    k3 = str(data_dir / "k3.txt")
    assert main(["algebra", k3, "--op", "poly", "--t-specialize", "0"]) == EXIT_OK
    assert capsys.readouterr().out == "p12*p23*p31 - p13*p21*p32\n"
    assert main(["algebra", k3, "--op", "cycles"]) == EXIT_OK
    assert capsys.readouterr().out == "1-2-3\n"
    assert main(["algebra", str(data_dir / "k4.txt"), "--op", "markov"]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 7
    k4e = str(data_dir / "k4_minus_edge.txt")
    assert main(["algebra", k4e, "--op", "trees"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "8"
    assert main(["algebra", k4e, "--op", "ideal"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "generators: p12*p23*p31, p12*p24*p41, p13*p24*p32*p41"
    assert out[-1] == "intersection check: ok"
    assert len(out) == 10


def test_exit_codes(data_dir, tmp_path):
    vision = data_dir / "vision.csv"
    assert run("fit", vision, "--t", "2").returncode == EXIT_INPUT
    assert run("fit", vision).returncode == EXIT_INPUT
    assert run("fit", tmp_path / "missing.csv", "--t", "0").returncode == EXIT_INPUT
    assert run("consensus", vision).returncode == EXIT_INPUT
    assert run("bogus").returncode == EXIT_INPUT
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    proc = run("fit", bad, "--t", "0")
    assert proc.returncode == EXIT_INPUT
    assert "error" in proc.stderr
    assert run("fit", vision, "--t", "0.5", "--max-iter", "1").returncode == EXIT_NOT_CONVERGED


def test_no_partial_output_on_errors(data_dir, tmp_path):
    out = tmp_path / "r.json"
    assert run("fit", data_dir / "vision.csv", "--t", "1.5", "--out", out).returncode == EXIT_INPUT
    bad = tmp_path / "bad.csv"
    bad.write_text("1,-2\n3,4\n")
    assert run("fit", bad, "--t", "0", "--out", out).returncode == EXIT_INPUT
    assert not out.exists()
    assert [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")] == []


def test_timing_is_opt_in(data_dir, capsys):
    assert main(["fit", str(data_dir / "symmetric.csv"), "--t", "0", "--timing"]) == EXIT_OK
    assert "timing_s" in json.loads(capsys.readouterr().out)


def test_helpers():
    assert parse_t_exact("2/3") * 3 == 2
    assert dumps({"b": 1.23456789012345, "a": -0.0}) == '{\n  "a": 0.0,\n  "b": 1.23456789\n}\n'


def _scan_rows(data_dir, name, capsys):
    assert main(["scan", str(data_dir / name), "--method", "full"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()[1:]
    return [[float(x) for x in line.split(",")] for line in lines]


def test_scan_examples(data_dir, capsys):
    rows = _scan_rows(data_dir, "sim_c.csv", capsys)
    best = max(rows, key=lambda r: r[1])
    nearest = min(rows, key=lambda r: abs(r[0] - 0.036))
    assert best == nearest
    # steps near t = 1 are about 1e-7, below 10 significant digits at this
    # magnitude, so the CSV can only be non-decreasing; the profile itself is strict
    ll = [r[1] for r in _scan_rows(data_dir, "vision.csv", capsys)]
    assert all(b >= a for a, b in zip(ll, ll[1:])) and ll[-1] > ll[0]
    from quasisym.datasets import VISION
    from quasisym.fit import FitConfig
    from quasisym.scan import profile

    assert np.all(np.diff(profile(VISION, "QS", None, FitConfig(method="full")).loglik) > 0)
    rows = _scan_rows(data_dir, "symmetric.csv", capsys)
    for col in (1, 2, 3):
        assert len({r[col] for r in rows}) == 1


def test_fit_on_symmetric_data(data_dir, capsys):
    from quasisym.datasets import SYMMETRIC
    from quasisym.gof import g2
    from quasisym.tables import symmetric_mle

    assert main(["fit", str(data_dir / "symmetric.csv"), "--t", "0.3"]) == EXIT_OK
    fit = json.loads(capsys.readouterr().out)["fit"]
    assert fit["a_hat"] == [0.0, 0.0, 0.0]
    deviance = g2(SYMMETRIC, symmetric_mle(SYMMETRIC).values * SYMMETRIC.total)
    assert fit["g2"] == pytest.approx(deviance, abs=1e-9)
