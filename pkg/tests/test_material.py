"""Tests of parameter handling, derived moduli and validation."""

import json

import numpy as np
import pytest

from rmmdisk import material


def random_valid_params(rng, L_c_range=(0.2, 5.0)):
    """One random parameter draw satisfying all validity conditions."""
    mu_M = rng.uniform(1.0, 10.0)
    mu_m = mu_M * rng.uniform(1.2, 4.0)
    kappa_M = mu_M * rng.uniform(0.7, 3.0)
    kappa_m = kappa_M * rng.uniform(1.2, 4.0)
    lo, hi = L_c_range
    L_c = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
    return material.MacroMicroParams(
        lambda_M=kappa_M - mu_M, mu_M=mu_M,
        lambda_m=kappa_m - mu_m, mu_m=mu_m,
        mu_c=rng.uniform(0.0, 5.0), L_c=L_c)


def test_preset_set1_derived_moduli():
    p = material.full_params(material.preset("set1"))
    assert p.mu_e == pytest.approx(37.6367, rel=1e-3)
    # proportional micro moduli: the set is classical by construction
    mm = p.macro_micro
    assert mm.lambda_m / mm.lambda_M == pytest.approx(mm.mu_m / mm.mu_M,
                                                      rel=1e-15)


def test_preset_set2_negative_lambda_e_is_valid():
    p = material.full_params(material.preset("set2"))
    assert p.lambda_e == pytest.approx(-2.1357, rel=1e-3)
    assert p.kappa_e > 0
    assert material.validate(p).ok


def test_preset_set3_harmonic_relations():
    p = material.full_params(material.preset("set3"))
    mm = p.macro_micro
    assert 1.0 / mm.mu_M == pytest.approx(1.0 / p.mu_e + 1.0 / mm.mu_m,
                                          rel=1e-14)
    assert 1.0 / mm.kappa_M == pytest.approx(1.0 / p.kappa_e + 1.0 / mm.kappa_m,
                                             rel=1e-14)
    # harmonic mean: macro moduli below both constituents
    assert mm.mu_M < min(p.mu_e, mm.mu_m)
    assert mm.kappa_M < min(p.kappa_e, mm.kappa_m)


def test_unknown_preset():
    with pytest.raises(KeyError):
        material.preset("set9")


def test_round_trip_identity():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        mm = random_valid_params(rng)
        e = material.derive_e_moduli(mm)
        lam_M, mu_M = material.recombine_macro(e, mm.lambda_m, mm.mu_m)
        assert lam_M == pytest.approx(mm.lambda_M, rel=1e-12, abs=1e-12)
        assert mu_M == pytest.approx(mm.mu_M, rel=1e-12)


def test_degenerate_equal_shear_moduli():
    mm = material.MacroMicroParams(lambda_M=1.0, mu_M=5.0, lambda_m=2.0,
                                   mu_m=5.0)
    with pytest.raises(material.DegenerateParameterError,
                       match="infinite mu_e"):
        material.derive_e_moduli(mm)


def test_validation_report_flags_bad_input():
    mm = material.MacroMicroParams(lambda_M=1.0, mu_M=5.0, lambda_m=2.0,
                                   mu_m=4.0)  # mu_m < mu_M
    report = material.validate(mm)
    assert not report.ok
    assert "FAIL" in str(report)


def test_validation_report_passes_presets():
    for name in material.preset_names():
        assert material.validate(material.preset(name)).ok


try:
    from hypothesis import given, strategies as st

    @given(mu_M=st.floats(0.5, 50.0), ratio=st.floats(1.01, 20.0),
           kM=st.floats(0.6, 5.0), km=st.floats(1.01, 10.0))
    def test_harmonic_bounds_property(mu_M, ratio, kM, km):
        mm = material.MacroMicroParams(
            lambda_M=kM * mu_M - mu_M, mu_M=mu_M,
            lambda_m=km * kM * mu_M - ratio * mu_M, mu_m=ratio * mu_M)
        e = material.derive_e_moduli(mm)
        # the macro moduli are harmonic means, hence below both constituents
        assert mm.mu_M < min(e.mu_e, mm.mu_m) * (1 + 1e-12)
        assert mm.kappa_M < min(e.kappa_e, mm.kappa_m) * (1 + 1e-12)
except ImportError:  # pragma: no cover - hypothesis is an optional test dep
    pass


def test_config_round_trip(tmp_path):
    cfg = {"lambda_M": 1.75, "mu_M": 5.9, "lambda_m": 8.22, "mu_m": 10.55,
           "r_over_lc": 2.0, "u0_over_r": 0.01}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    data = material.params_from_config(path)
    assert data["mu_m"] == 10.55
    assert data["r_over_lc"] == 2.0


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"mu_M": 5.9, "bogus": 1}))
    with pytest.raises(ValueError, match="bogus"):
        material.params_from_config(path)
