import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from knotslice import cli, transport
from knotslice.cli import main, round_floats


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_poly_text(capsys):
    code, out, _ = run(["poly", "B1:", "3"], capsys)
    assert code == 0
    assert out.splitlines() == ["q^2 + 1 + q^-2", "P(-1) = 3"]


def test_poly_trefoil_footer(capsys):
    code, out, _ = run(["poly", "B2:-1,-1,-1", "2"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "P(-1) = -2"


def test_poly_json(capsys):
    code, out, _ = run(["poly", "B2:-1,-1,-1", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["p_minus_one"] == -2
    assert data["coefficients"] == {"1": 1, "3": 1, "5": 1, "9": -1}


def test_poly_malformed(capsys):
    code, _, err = run(["poly", "B2:-1,x", "2"], capsys)
    assert code == 2
    assert "position 6" in err
    assert err.splitlines()[-1].index("^") == 2 + 6


def test_tables(capsys):
    code, out, _ = run(["tables", "--m", "3", "--n", "3"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["m", "n", "kostka", "lis_count", "spaltenstein_dim", "equal"]
    by_mn = {(int(r["m"]), int(r["n"])): r for r in rows}
    assert by_mn[(3, 2)]["kostka"] == "5" and by_mn[(3, 2)]["lis_count"] == "5"
    assert by_mn[(3, 2)]["spaltenstein_dim"] == "6"
    assert by_mn[(2, 3)]["kostka"] == "2" and by_mn[(2, 3)]["spaltenstein_dim"] == "8"
    assert all(r["equal"] == "true" for r in rows)
    code2, out2, _ = run(["tables", "--m", "3", "--n", "3"], capsys)
    assert out2 == out


def test_tables_limit(capsys):
    code, _, err = run(["tables", "--m", "10", "--n", "2"], capsys)
    assert code == 2
    assert "limit" in err


def test_transport_rex_writes_outputs(tmp_path, capsys):
    code, out, _ = run(["transport", "rex", "--n", "3", "--t", "0.5", "--out", str(tmp_path)], capsys)
    assert code == 0
    summary = json.loads(out)
    assert summary["passed"] and summary["deviation"] <= 1e-6
    assert (tmp_path / "rex_trace.csv").read_text().startswith("s,residual,psi,norm,flags")
    first = (tmp_path / "rex_summary.json").read_bytes()
    run(["transport", "rex", "--n", "3", "--t", "0.5", "--out", str(tmp_path)], capsys)
    assert (tmp_path / "rex_summary.json").read_bytes() == first


def test_transport_trefoil(tmp_path, capsys):
    code, out, _ = run(["transport", "trefoil", "--n", "3", "--d", "0.3", "--z", "0.01",
                        "--out", str(tmp_path)], capsys)
    summary = json.loads(out)
    assert code == 0
    assert len(summary["strata"]) == 2
    assert (tmp_path / "trefoil_paths.csv").exists()


def test_transport_trefoil_bad_regime(tmp_path, capsys):
    code, _, err = run(["transport", "trefoil", "--z", "5", "--out", str(tmp_path)], capsys)
    assert code == 2
    assert "singular alphas are not real" in err


@pytest.mark.parametrize("experiment", ["vanishing", "monodromy", "gradient"])
def test_other_experiments(experiment, tmp_path, capsys):
    argv = ["transport", experiment, "--out", str(tmp_path), "--format", "text"]
    if experiment == "gradient":
        argv += ["--samples", "200", "--n", "3", "--d", "0.5"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out.strip() == f"PASS transport {experiment}"
    assert (tmp_path / f"{experiment}_summary.json").exists()


def test_unknown_subcommand(capsys):
    code, _, err = run(["transport", "nope"], capsys)
    assert code == 2
    assert "usage" in err


def test_env_var_sets_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("KNOTSLICE_OUT", str(tmp_path / "env"))
    assert run(["verify", "unlink"], capsys)[0] == 0
    assert (tmp_path / "env" / "verify_unlink.json").exists()


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 2, "t": 0.4}))
    _, out, _ = run(["transport", "rex", "--config", str(cfg), "--out", str(tmp_path)], capsys)
    data = json.loads(out)
    assert data["n"] == 2 and data["t"] == 0.4
    _, out, _ = run(["transport", "rex", "--config", str(cfg), "--n", "4", "--out", str(tmp_path)], capsys)
    data = json.loads(out)
    assert data["n"] == 4 and data["t"] == 0.4


def test_bad_config_and_tol(tmp_path, capsys):
    assert run(["transport", "rex", "--config", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["transport", "rex", "--tol", "0", "--out", str(tmp_path)], capsys)[0] == 2


def test_nonconvergence_exit_code(tmp_path, monkeypatch, capsys):
    def failing(*args, **kwargs):
        return transport.TransportTrace(s=[0.0], points=[np.zeros(6)], ambient=[np.zeros(9)], residuals=[0.0],
                                        psi=[0.0], flags=[""], status=transport.STEP_FAILURE,
                                        message="step size underflow")

    monkeypatch.setattr(cli.transport, "transport_m1", failing)
    code, _, err = run(["transport", "rex", "--out", str(tmp_path)], capsys)
    assert code == 3
    assert "STEP_FAILURE" in err


def test_verify_suites(tmp_path, capsys):
    code, out, _ = run(["verify", "skein", "--trials", "30", "--out", str(tmp_path)], capsys)
    assert code == 0 and out.startswith("PASS skein")
    code, _, _ = run(["verify", "conjecture-euler", "--n", "2,3,4", "--out", str(tmp_path)], capsys)
    assert code == 0
    data = json.loads((tmp_path / "verify_conjecture-euler.json").read_text())
    assert data["passed"] is True


def test_verify_breakings_reports_failure(tmp_path, capsys):
    code, out, _ = run(["verify", "breakings", "--out", str(tmp_path), "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 1
    failures = data["results"][0]["detail"]["failures"]
    assert {(f["example"], f["n"]) for f in failures} == {("ex5", 3)}


def test_round_floats():
    assert round_floats(1 / 3) == 0.333333333333
    assert round_floats({"a": [1e-20 / 3, 2 + 1j]}) == {"a": [3.33333333333e-21, [2.0, 1.0]]}
    assert round_floats(float("nan")) == "nan"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "knotslice.cli", "poly", "B1:", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "q^2 + 1 + q^-2"
