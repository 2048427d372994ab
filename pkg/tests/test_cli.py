"""End-to-end tests of the command-line interface."""

import json

import numpy as np
import pytest

from rmmdisk import cli

HEADER = ("r/R,u_r/U0,P_rr,P_thth,P_rth,P_thr,Z,sigma_rr,sigma_thth,"
          "sigma_micro_rr,sigma_micro_thth,m_zth,energy_density,delta")


def run(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = cli.main(args + ["--out", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


def test_solve_header_and_shape(tmp_path):
    code, text = run(["solve", "--preset", "set3", "--r-over-lc", "2",
                      "--samples", "50"], tmp_path)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 51
    assert "\r" not in text


def test_solve_deterministic_byte_identical(tmp_path):
    args = ["solve", "--preset", "set2", "--r-over-lc", "5", "--samples", "64"]
    _, a = run(args, tmp_path, "a.csv")
    _, b = run(args, tmp_path, "b.csv")
    assert a == b


def test_solve_proportional_set_has_zero_delta(tmp_path):
    code, text = run(["solve", "--preset", "set1", "--r-over-lc", "2"],
                     tmp_path)
    assert code == 0
    deltas = [abs(float(row.split(",")[-1]))
              for row in text.splitlines()[1:]]
    assert max(deltas) < 1e-12


def test_solve_zero_boundary_displacement(tmp_path):
    code, text = run(["solve", "--preset", "set3", "--u0-over-r", "0",
                      "--samples", "10"], tmp_path)
    assert code == 0
    for row in text.splitlines()[1:]:
        values = [float(v) for v in row.split(",")]
        assert all(v == 0.0 for v in values[1:])


def test_sweep_blocks_in_order(tmp_path):
    code, text = run(["sweep", "--preset", "set3",
                      "--sweep", "R_over_Lc=0.05,2,200",
                      "--samples", "20"], tmp_path)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "sweep_value,r/R,delta"
    sweep_vals = [float(l.split(",")[0]) for l in lines[1:]]
    assert sweep_vals == sorted(sweep_vals) and len(lines) == 61
    # delta uniformly smaller at both R/L_c extremes than in between
    by_val = {}
    for l in lines[1:]:
        v, _, d = l.split(",")
        by_val.setdefault(float(v), []).append(abs(float(d)))
    assert max(by_val[0.05]) < max(by_val[2.0])
    assert max(by_val[200.0]) < max(by_val[2.0])


def test_sweep_beta1_signs(tmp_path):
    code, text = run(["sweep", "--preset", "set3", "--sweep", "beta1=1,5",
                      "--samples", "40"], tmp_path)
    assert code == 0
    neg = [float(l.split(",")[2]) for l in text.splitlines()[1:41]]
    pos = [float(l.split(",")[2]) for l in text.splitlines()[41:]]
    assert all(d <= 1e-15 for d in neg)
    assert max(pos) > 0.0


def test_sweep_invalid_point_exits_2(tmp_path, capsys):
    code = cli.main(["sweep", "--preset", "set3", "--sweep", "beta2=0.5"])
    assert code == 2
    assert "beta2=0.5" in capsys.readouterr().err


def test_sweep_bad_spec_exits_2(tmp_path):
    assert cli.main(["sweep", "--preset", "set3", "--sweep", "gamma=1"]) == 2
    assert cli.main(["sweep", "--preset", "set3", "--sweep", "beta1="]) == 2


def test_verify_passes_for_presets(tmp_path):
    for preset in ("set1", "set3"):
        code, text = run(["verify", "--preset", preset, "--cells", "256"],
                         tmp_path, f"{preset}.txt")
        assert code == 0, text
        assert "verification PASSED" in text
        summary = json.loads(text.splitlines()[-1])
        assert summary["passed"] is True


def test_verify_corrupt_self_test_fails(tmp_path):
    code, text = run(["verify", "--preset", "set3", "--cells", "256",
                      "--corrupt"], tmp_path)
    assert code == 1
    assert "FAIL" in text and "verification FAILED" in text


def test_params_table(tmp_path):
    code, text = run(["params", "--preset", "set2"], tmp_path)
    assert code == 0
    table = dict(line.split("=", 1) for line in text.splitlines()
                 if "=" in line)
    table = {k.strip(): v for k, v in table.items()}
    assert float(table["mu_e"].split()[0]) == pytest.approx(14.014, rel=1e-3)
    assert "valid (kappa_e > 0)" in text


def test_params_degenerate_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"lambda_M": 1.0, "mu_M": 5.9, "lambda_m": 2.0,
                               "mu_m": 5.9}))
    code = cli.main(["params", "--config", str(cfg)])
    assert code == 2
    assert "infinite mu_e" in capsys.readouterr().err


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"lambda_M": 1.75, "mu_M": 5.9,
                               "lambda_m": 8.22, "mu_m": 10.55,
                               "r_over_lc": 1.0}))
    _, from_cfg = run(["solve", "--config", str(cfg), "--r-over-lc", "2",
                       "--samples", "10"], tmp_path, "cfg.csv")
    _, from_preset = run(["solve", "--preset", "set3", "--r-over-lc", "2",
                          "--samples", "10"], tmp_path, "preset.csv")
    assert from_cfg == from_preset


def test_both_sources_rejected(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{}")
    assert cli.main(["solve", "--preset", "set3",
                     "--config", str(cfg)]) == 2


def test_mu_c_bit_identical_output(tmp_path):
    base = ["solve", "--preset", "set3", "--r-over-lc", "2", "--samples", "32"]
    _, ref = run(base, tmp_path, "mc0.csv")
    for mc in (1.0, 100.0):
        cfg = tmp_path / f"mc{mc}.json"
        cfg.write_text(json.dumps({"lambda_M": 1.75, "mu_M": 5.9,
                                   "lambda_m": 8.22, "mu_m": 10.55,
                                   "mu_c": mc, "r_over_lc": 2.0}))
        _, alt = run(["solve", "--config", str(cfg), "--samples", "32"],
                     tmp_path, f"mc{mc}.csv")
        assert alt == ref
