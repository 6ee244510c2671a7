import csv
import io
import json

import numpy as np
import pytest

from chirogeom import averaging as av
from chirogeom import curvature as cv
from chirogeom import dipoles as dp
from chirogeom.cli import SCAN_COLUMNS, main
from chirogeom.config import read_config

SMALL = {
    "version": 1,
    "pulses": {"sequence": "CircLin"},
    "scan": {"k": [0.7, 1.2], "tau": [0.0, 1.5], "sigma": [1, -1]},
    "e_ref": "d1_cross_d2",
    "orientation": [0.3, 1.0, 2.0],
}


@pytest.fixture
def cfg_path(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(SMALL))
    return str(p)


def _rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# chirogeom-")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_gen_is_byte_identical(tmp_path, cfg_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gen", "--config", cfg_path, "--out", str(a)]) == 0
    assert main(["gen", "--config", cfg_path, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    s = dp.load(a)
    assert dp.t_symmetry_residual(s) <= 1e-12


def test_gen_rejects_lmax_zero(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"version": 1, "dipoles": {"synthetic": {"seed": 1, "lmax": 0, "t_symmetric": True, "grid": [6, 12]}}}))
    assert main(["gen", "--config", str(p)]) == 2
    assert "dipoles.synthetic.lmax" in capsys.readouterr().err


def test_scan_columns_and_values(tmp_path, cfg_path):
    out = tmp_path / "scan.csv"
    assert main(["scan", "--config", cfg_path, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[1].split(",") == SCAN_COLUMNS
    rows = _rows(text)
    assert len(rows) == 2 * 2 * 2
    cfg = read_config(cfg_path)
    for row in rows:
        i = cfg.k.index(float(row["k"]))
        s = cfg.dipoles_at(i)
        pp = cfg.pulses_at(i, float(row["tau"]), int(row["sigma"]))
        e = av.e_along_d1_cross_d2(s)
        o = av.orient_avg(s, pp, e)
        assert float(row["orient_z"]) == o.orient_z
        assert float(row["cos_beta"]) == o.cos_beta
        assert float(row["W"]) == av.avg_yield(s, pp)
        mc = cv.curvature(s, pp, cfg.orientation)
        assert [float(row[f"omega_exc_{a}"]) for a in "xyz"] == list(mc.exc.omega)
        if float(row["tau"]) == 0.0:
            assert abs(o.orient_z) <= 1e-12
    by_key = {(r["k"], r["tau"], r["sigma"]): float(r["orient_z"]) for r in rows}
    for (k, tau, sigma), val in by_key.items():
        if sigma == "1":
            assert by_key[(k, tau, "-1")] == pytest.approx(-val, rel=1e-10, abs=1e-15)


def test_scan_threads_are_deterministic(tmp_path, cfg_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["scan", "--config", cfg_path, "--out", str(a)])
    main(["scan", "--config", cfg_path, "--out", str(b), "--threads", "3"])
    assert a.read_bytes() == b.read_bytes()


def test_flux_output(tmp_path, cfg_path):
    out = tmp_path / "flux.csv"
    assert main(["flux", "--config", cfg_path, "--out", str(out)]) == 0
    for row in _rows(out.read_text()):
        assert float(row["flux_dichroic_oriented"]) == pytest.approx(float(row["W_dichroic_oriented"]), rel=1e-8)
        assert abs(float(row["flux_dichroic"]) - float(row["W_dichroic"])) <= 1e-12


def test_verify_default_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "checks passed" in out.splitlines()[-1]


def test_verify_tolerance_flag(capsys):
    assert main(["verify", "--tolerance", "1e-6"]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert main(["verify", "--tolerance", "0"]) == 2


def test_verify_corrupted_file_names_checks(tmp_path, sym_set, capsys):
    data = dp.to_dict(sym_set)
    data["D1"][0][0][1] += 0.3
    (tmp_path / "c.json").write_text(json.dumps(data))
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"version": 1, "dipoles": {"file": "c.json", "t_symmetric": True}}))
    assert main(["verify", "--config", str(cfg)]) == 1
    out = capsys.readouterr().out
    assert "FAIL  dipole_file_time_reversal" in out


def test_verify_truncated_file(tmp_path, sym_set, capsys):
    (tmp_path / "t.json").write_text(dp.dumps(sym_set)[:400])
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"version": 1, "dipoles": {"file": "t.json"}}))
    assert main(["verify", "--config", str(cfg)]) == 1
    assert "FAIL  dipole_file_load" in capsys.readouterr().out


def test_bad_config_exit_code(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text('{"version": 1, "pulses": {"sequence": "Foo"}}')
    assert main(["scan", "--config", str(p)]) == 2
    assert "pulses.sequence" in capsys.readouterr().err
    assert main(["scan", "--threads", "0"]) == 2
