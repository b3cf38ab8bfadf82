import json
import math

import numpy as np
import pytest

import dipole1d.cli as cli
from dipole1d.cli import run
from dipole1d.eigensolver import ConvergenceError


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _csv_rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    return header, [l.split(",") for l in lines[1:]]


def test_convert_pcrit(tmp_path, capsys):
    assert run(["convert", "--pcrit-si"]) == 0
    out = capsys.readouterr().out
    header, rows = _csv_rows(out)
    values = {r[0]: r for r in rows}
    p = float(values["p_crit_exact"][2])
    assert abs(p - 1.052e-30) / 1.052e-30 < 1e-2
    assert float(values["estimate_to_exact_ratio"][1]) == 16.0


def test_convert_si_suffix(capsys):
    assert run(["convert", "--p", "1.052e-30si"]) == 0
    out = capsys.readouterr().out
    header, rows = _csv_rows(out)
    values = {r[0]: r for r in rows}
    alpha = float(values["alpha"][1])
    assert alpha == pytest.approx(0.25, rel=1e-2)


def test_convert_requires_input(capsys):
    assert run(["convert"]) == 1
    assert "usage" in capsys.readouterr().err


def test_spectrum_matches_library(tmp_path):
    out = tmp_path / "box.csv"
    code = run(["spectrum", "--lambda", "0.0", "--domain", "0:3.141592653589793",
                "--grid", "uniform", "--n", "64", "--states", "3",
                "--out", str(out)])
    assert code == 0
    header, rows = _csv_rows(out.read_text())
    assert header[:3] == ["index", "energy_hartree", "node_count"]
    from dipole1d.eigensolver import Grid, discretize, lowest_eigenvalues
    from dipole1d.potentials import Coulomb

    sp = lowest_eigenvalues(
        discretize(Coulomb(0.0), Grid("uniform", 0.0, math.pi, 64)), 3
    )
    for j, row in enumerate(rows):
        assert float(row[1]) == sp.energies[j]
        assert int(row[2]) == sp.node_counts[j]


def test_spectrum_negative_domain_token():
    assert run(["spectrum", "--p", "1", "--domain", "-20:0",
                "--n", "512", "--states", "1", "--out", "/dev/null"]) == 0


def test_spectrum_requires_potential(capsys):
    assert run(["spectrum", "--domain", "0:1", "--n", "64"]) == 1
    assert "no potential" in capsys.readouterr().err


def test_hydrogen_json(tmp_path):
    out = tmp_path / "h.json"
    code = run(["hydrogen", "--n", "1024", "--refine-levels", "1",
                "--format", "json", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["command"] == "hydrogen"
    assert doc["balmer_hartree"] == pytest.approx([-0.5, -0.125, -1 / 18])
    assert max(doc["relative_errors"]) < 1e-2
    assert doc["node_counts"] == [0, 1, 2]


def test_series_tables(tmp_path):
    out = tmp_path / "s.csv"
    assert run(["series", "--alpha", "0.1875", "--xi", "1", "--nterms", "6",
                "--out", str(out)]) == 0
    text = out.read_text()
    assert "# table=coefficients" in text
    assert "# table=residuals" in text
    coeff_section = text.split("# table=coefficients")[1].split("# table=residuals")[0]
    rows = [l.split(",") for l in coeff_section.strip().splitlines()[1:]]
    assert float(rows[2][1]) == pytest.approx(0.2, rel=1e-15)
    assert all(float(r[1]) == 0.0 for r in rows[1::2])  # odd coefficients


def test_series_requires_alpha(capsys):
    assert run(["series"]) == 1


def test_critical_scan_json(tmp_path):
    out = tmp_path / "c.json"
    code = run(["critical-scan", "--windows", "1e-5:1e5,1e-6:1e6,1e-7:1e7",
                "--format", "json", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["alpha_crit_numeric"] == pytest.approx(0.25, abs=1e-3)
    assert doc["ratio_estimate_to_exact"] == 16.0
    assert doc["p_crit_exact_au"] == 0.125


def test_cutoff_sweep_csv(tmp_path):
    out = tmp_path / "cut.csv"
    code = run(["cutoff-sweep", "--epsilon", "0.2,0.1", "--domain", "0:20",
                "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "# monotone_decreasing=true" in text
    header, rows = _csv_rows(text)
    energies = [float(r[1]) for r in rows]
    assert energies[1] < energies[0] < -0.5


def test_dipole_limit_inconclusive_exit(tmp_path):
    out = tmp_path / "dl.csv"
    code = run(["dipole-limit", "--d", "0.1", "--epsilon", "4e-3",
                "--domain", "-15:15", "--out", str(out)])
    assert code == 3
    assert "binds_everywhere" in out.read_text()


def test_const_override_changes_output(capsys):
    assert run(["convert", "--pcrit-si"]) == 0
    base = capsys.readouterr().out
    assert run(["convert", "--pcrit-si", "--const", "hbar=2.1e-34"]) == 0
    changed = capsys.readouterr().out
    assert base != changed
    base_val = float(_csv_rows(base)[1][0][2])
    new_val = float(_csv_rows(changed)[1][0][2])
    assert new_val != base_val


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("kind=coulomb\nlambda=1.0\nepsilon0=8.8e-12\n")
    out = tmp_path / "spec.csv"
    code = run(["spectrum", "--config", str(cfg), "--grid", "log",
                "--domain", "1e-5:200", "--n", "1024", "--states", "1",
                "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "kind=coulomb" in text
    assert "CODATA 2022 with overrides" in text


def test_unknown_constant_rejected(capsys):
    assert run(["convert", "--pcrit-si", "--const", "planck=1"]) == 1


def test_malformed_number(capsys):
    assert run(["spectrum", "--p", "abc", "--domain", "-5:0", "--n", "64"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: code=")
    assert "\n" not in err.strip()


def test_unknown_flag(capsys):
    assert run(["hydrogen", "--frobnicate", "3"]) == 1


def test_convergence_maps_to_exit_2(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise ConvergenceError("fabricated stall", diagnostics=None)

    monkeypatch.setattr(cli, "hydrogen_spectrum", boom)
    assert run(["hydrogen", "--n", "64"]) == 2
    assert "code=convergence" in capsys.readouterr().err


def test_format_both_requires_out(capsys):
    assert run(["convert", "--pcrit-si", "--format", "both"]) == 1


def test_format_both_writes_pair(tmp_path):
    out = tmp_path / "pair"
    assert run(["convert", "--pcrit-si", "--format", "both", "--out", str(out)]) == 0
    doc = json.loads((tmp_path / "pair.json").read_text())
    assert doc["command"] == "convert"
    assert (tmp_path / "pair.csv").read_text().startswith("# command=convert")


def test_selftest_passes(capsys):
    assert run(["selftest", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") >= 6


@pytest.mark.parametrize(
    "argv",
    [
        ["convert", "--pcrit-si"],
        ["series", "--alpha", "0.5", "--nterms", "8"],
        ["spectrum", "--lambda", "1", "--grid", "log", "--domain", "1e-5:200",
         "--n", "1024", "--states", "2"],
        ["cutoff-sweep", "--epsilon", "0.2,0.1", "--domain", "0:20"],
        ["critical-scan", "--windows", "1e-5:1e5,1e-6:1e6"],
    ],
)
def test_byte_identical_reruns(tmp_path, argv):
    a = tmp_path / "a.out"
    b = tmp_path / "b.out"
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert _read(a) == _read(b)
