import json

import pytest

from Code.Agents.hoepr.hoepr.run import EXIT_NUMERICAL, EXIT_UNPHYSICAL, EXIT_USAGE, main

pytestmark = pytest.mark.usefixtures("no_env")


@pytest.fixture(autouse=True)
def _workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def run_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def test_lambda_order_two(capsys):
    out = run_json(capsys, "lambda", "--order", "2", "--trunc", "10")
    assert out["lambda"] == pytest.approx(1.0, abs=1e-10)
    assert out["N"] == 10
    assert out["converged"]
    assert out["config"]["order"] == 2
    assert out["config"]["truncation"] == 10
    assert "coefficients" not in out


def test_lambda_order_four(capsys):
    out = run_json(capsys, "lambda", "--trunc", "400")
    assert out["order"] == 4
    assert out["lambda"] == pytest.approx(1.39672823, abs=1e-7)


def test_lambda_sweep(capsys):
    out = run_json(capsys, "lambda", "--order", "4", "--trunc", "200", "--sweep", "50,100,200")
    assert [p["N"] for p in out["sweep"]["points"]] == [50, 100, 200]


def test_odd_order_is_usage_error(capsys):
    assert main(["lambda", "--order", "3"]) == EXIT_USAGE
    assert "even" in capsys.readouterr().err


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["lambda", "--bogus"])
    assert info.value.code == EXIT_USAGE


def test_csv_only_for_wavefunction():
    assert main(["lambda", "--format", "csv"]) == EXIT_USAGE


def test_bipartite_order_two(capsys):
    out = run_json(capsys, "bipartite", "--order", "2", "--trunc", "10")
    assert out["Lambda"] == pytest.approx(2.0, abs=1e-8)
    assert out["N_per_mode"] == 10


def test_bipartite_memory_guard(capsys):
    assert main(["bipartite", "--order", "4", "--trunc", "400"]) == EXIT_NUMERICAL
    assert "error" in capsys.readouterr().err


def test_wavefunction_csv(capsys):
    code = main(["wavefunction", "--order", "4", "--trunc", "400", "--grid", "-1", "1", "0.5", "--derivs", "2"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# order=4 N=400 lambda=")
    assert lines[1].startswith("# d0(0)=")
    header = next(line for line in lines if not line.startswith("#"))
    assert header.split(",")[:2] == ["x", "psi"]
    assert len([line for line in lines if not line.startswith("#")]) == 1 + 5


def test_fit(capsys):
    out = run_json(capsys, "fit", "--order", "4", "--trunc", "400")
    assert out["fit"]["a"] == pytest.approx(0.345424, abs=0.02)
    assert out["fit"]["b"] == pytest.approx(0.402533, abs=0.02)


def test_state_squeezed_vacuum(capsys):
    out = run_json(
        capsys, "state", "--family", "squeezed_vacuum", "--lam", "-0.9",
        "--criterion", "duan_higher", "--order", "4",
    )
    assert out["report"]["value"] == pytest.approx(0.016620, abs=1e-6)
    assert out["report"]["verdict"] == "entangled"
    assert out["closed_form"] == pytest.approx(out["report"]["value"], rel=1e-8)
    assert out["state"] == {"family": "squeezed_vacuum", "lam": -0.9}


def test_state_missing_parameter():
    assert main(["state", "--family", "psi_n", "--xi", "0.5"]) == EXIT_USAGE


def test_state_explicit(capsys, tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("1,0\n0,0\n")
    out = run_json(capsys, "state", "--family", "explicit", "--coefficients", str(path))
    assert out["report"]["value"] == pytest.approx(2.0)
    assert out["report"]["verdict"] == "inconclusive"


def test_unphysical_covariance(capsys):
    cov = ["0.1", "0", "0", "0", "0", "0.1", "0", "0", "0", "0", "0.1", "0", "0", "0", "0", "0.1"]
    assert main(["state", "--family", "gaussian", "--covariance", *cov]) == EXIT_UNPHYSICAL
    assert "min eigenvalue" in capsys.readouterr().err


def test_gaussian_best_sign(capsys):
    cov = ["0.5", "0", "0", "0", "0", "0.5", "0", "0", "0", "0", "0.5", "0", "0", "0", "0", "0.5"]
    out = run_json(capsys, "state", "--family", "gaussian", "--covariance", *cov, "--criterion", "dbS", "--best-sign")
    assert out["report"]["value"] == pytest.approx(2.0)


def test_scan_is_deterministic(capsys):
    first = run_json(capsys, "gaussian-scan", "--samples", "50", "--seed", "5")
    second = run_json(capsys, "gaussian-scan", "--samples", "50", "--seed", "5")
    assert first == second
    assert first["report"]["violations"] == 0
    assert first["report"]["bound"] == 2.0


def test_hierarchy(capsys):
    out = run_json(capsys, "hierarchy")
    assert out["report"]["holds"]


def test_thresholds(capsys):
    out = run_json(capsys, "thresholds")
    order4 = out["thresholds"]["duan_higher:4"]
    assert [r["role"] for r in order4].count("threshold") == 1
    assert [r["value"] for r in order4] == sorted(r["value"] for r in order4)


def test_thread_setting_echoed(capsys, monkeypatch):
    monkeypatch.setenv("HOEPR_THREADS", "3")
    out = run_json(capsys, "gaussian-scan", "--samples", "10")
    assert out["config"]["threads"] == 3


def test_explicit_flag_beats_environment(capsys, monkeypatch):
    monkeypatch.setenv("HOEPR_THREADS", "3")
    out = run_json(capsys, "gaussian-scan", "--samples", "10", "--threads", "2")
    assert out["config"]["threads"] == 2


def test_bad_environment_is_usage_error(monkeypatch):
    monkeypatch.setenv("HOEPR_TOL", "-1")
    assert main(["thresholds"]) == EXIT_USAGE
