import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from qbouncer import cli
from qbouncer.bouncer import CESIUM_MASS, HBAR
from qbouncer.errors import MaxIterations


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def test_spectrum_csv():
    code, text = run("spectrum", "--n-max", "10", "--format", "csv")
    assert code == 0
    rows = rows_of(text)
    assert rows[0] == ["n", "lambda_exact", "lambda_asym", "rel_error", "E_exact", "E_asym"]
    assert len(rows) == 11
    assert float(rows[1][3]) == pytest.approx(0.0076, abs=1e-4)
    assert "\r" not in text and text.endswith("\n")


def test_csv_floats_round_trip_exactly():
    from qbouncer.spectrum import lambda_exact

    _, text = run("spectrum", "--n-max", "2")
    assert float(rows_of(text)[1][1]) == lambda_exact(1)
    assert len(rows_of(text)[1][1].replace(".", "").lstrip("0")) >= 16


@pytest.mark.parametrize("argv", [
    ["spectrum", "--n-max", "0"],
    ["spectrum", "--format", "xml"],
    ["spectrum", "--units", "imperial"],
    ["wavefunction", "--points", "1"],
    ["wavefunction", "--n", "0"],
    ["wavefunction", "--z-max-factor", "-1"],
    ["verify", "--level", "slow"],
    ["scaling", "--n-lo", "10", "--n-hi", "15"],
    ["scaling", "--n-lo", "0", "--n-hi", "20"],
    ["bogus"],
    [],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_wavefunction_boundary_and_params():
    code, text = run("wavefunction", "--n", "1", "--points", "1001", "--format", "json")
    assert code == 0
    rec = json.loads(text)
    p = rec["params"]
    assert {"turning_point", "norm_const"} <= set(p)
    phi = np.array([r["phi"] for r in rec["rows"]])
    z = np.array([r["z"] for r in rec["rows"]])
    assert len(phi) == 1001
    assert abs(phi[0]) < 1e-10 * p["norm_const"]
    assert z[-1] == pytest.approx(2.0 * p["turning_point"])
    assert np.allclose(np.diff(z), z[1] - z[0])


def test_wavefunction_nodes():
    _, text = run("wavefunction", "--n", "3", "--points", "2001")
    phi = np.array([float(r[1]) for r in rows_of(text)[1:]])[1:]
    s = np.sign(phi[phi != 0])
    assert np.count_nonzero(s[1:] != s[:-1]) == 2


def test_scaling_json_round_trip():
    code, text = run("scaling", "--n-lo", "10", "--n-hi", "200", "--format", "json")
    assert code == 0
    rec = json.loads(text)
    assert rec["params"]["exponent"] == pytest.approx(0.667, abs=0.01)
    assert len(rec["rows"]) == 191
    assert json.loads(json.dumps(rec)) == rec
    assert rec["schema_version"] == cli.SCHEMA_VERSION


def test_json_record_shape():
    _, text = run("spectrum", "--n-max", "3", "--format", "json")
    rec = json.loads(text)
    assert set(rec) == {"schema_version", "command", "params", "rows", "provenance"}
    assert rec["command"] == "spectrum"
    prov = rec["provenance"]
    assert sum(prov["evaluator_route_stats"].values()) == 3
    assert prov["tolerances"]["root_tol"] == 1e-12


def test_deterministic_output():
    for argv in (["spectrum", "--n-max", "5", "--format", "json"], ["wavefunction", "--n", "2"]):
        assert run(*argv) == run(*argv)


def test_si_units_and_config(tmp_path):
    _, default = run("spectrum", "--n-max", "1", "--units", "si", "--format", "json")
    p = json.loads(default)["params"]
    assert p["mass"] == CESIUM_MASS and p["hbar"] == HBAR
    cfg = tmp_path / "neutron.cfg"
    cfg.write_text("# neutron\nmass = 1.67492749804e-27  # kg\ng = 9.81\n")
    code, text = run("spectrum", "--n-max", "1", "--units", "si", "--config", str(cfg), "--format", "json")
    assert code == 0
    rec = json.loads(text)
    assert rec["params"]["mass"] == 1.67492749804e-27 and rec["params"]["g"] == 9.81
    assert rec["params"]["hbar"] == HBAR
    row = rec["rows"][0]
    assert row["E_exact"] == pytest.approx(rec["params"]["e_scale"] * row["lambda_exact"], rel=1e-15)


@pytest.mark.parametrize("content", ["mass = heavy\n", "charge = 1.0\n", "mass 1.0\n"])
def test_bad_config_exit_2(tmp_path, content):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(content)
    assert run("spectrum", "--units", "si", "--config", str(cfg))[0] == 2


def test_missing_config_and_nonphysical_values(tmp_path):
    assert run("spectrum", "--units", "si", "--config", str(tmp_path / "nope.cfg"))[0] == 2
    cfg = tmp_path / "neg.cfg"
    cfg.write_text("g = -9.81\n")
    assert run("spectrum", "--units", "si", "--config", str(cfg))[0] == 2


def test_numerical_failure_exit_3(monkeypatch, capsys):
    def boom(*a, **k):
        err = MaxIterations("zero 4 not converged")
        err.n = 4
        raise err

    monkeypatch.setattr(cli, "build_spectrum", boom)
    code, out = run("spectrum", "--n-max", "5")
    assert code == 3 and out == ""
    msg = capsys.readouterr().err
    assert "spectrum" in msg and "level 4" in msg


def test_verify_quick():
    code, text = run("verify", "--level", "quick")
    assert code == 0
    assert "max_rel_error=0.0076" in text and "PASS(<0.01)" in text
    assert "fd oracle order" not in text
    assert all(line.split()[-1].startswith("PASS") for line in text.splitlines()[:-1])


def test_verify_full_has_order_line():
    code, text = run("verify", "--level", "full")
    assert code == 0
    line = next(l for l in text.splitlines() if l.startswith("fd oracle order"))
    assert float(line.split("p=")[1].split()[0]) == pytest.approx(2.0, abs=0.2)


def test_verify_failure_exit_1(monkeypatch):
    from qbouncer import checks

    monkeypatch.setattr(checks, "run", lambda level: [checks._check("x", "v", 2.0, 1.0)])
    code, text = run("verify")
    assert code == 1 and "FAIL(<1)" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qbouncer", "spectrum", "--n-max", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("n,lambda_exact")
