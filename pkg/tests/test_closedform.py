"""Tests of the closed-form solution: boundary conditions, residuals,
invariances, limits, the delta metric and the energy quadrature."""

import numpy as np
import pytest

from rmmdisk import closedform, material
from test_material import random_valid_params

SETUP = closedform.ProblemSetup(R=1.0, U0=0.01)


def solution(name="set3", L_c=0.5, mu_c=0.0):
    mm = material.preset(name, L_c=L_c, mu_c=mu_c)
    return closedform.Solution(material.full_params(mm), SETUP)


def test_boundary_conditions_random_draws():
    rng = np.random.default_rng(7)
    for _ in range(50):
        mm = random_valid_params(rng)
        sol = closedform.Solution(material.full_params(mm), SETUP)
        assert sol.u_r(SETUP.R) == pytest.approx(SETUP.U0, rel=1e-12)
        _, P_tt, _ = sol.P(SETUP.R)
        assert P_tt == pytest.approx(SETUP.U0 / SETUP.R, rel=1e-12)


def test_trace_consistency():
    sol = solution()
    r = np.linspace(0.0, 1.0, 101)
    P_rr, P_tt, Z = sol.P(r)
    assert np.allclose(P_rr + P_tt, Z, rtol=1e-14, atol=1e-18)


def test_fields_linear_in_U0():
    p = material.full_params(material.preset("set3", L_c=0.5))
    r = np.linspace(0.0, 1.0, 33)
    one = closedform.Solution(p, SETUP)
    two = closedform.Solution(p, closedform.ProblemSetup(R=1.0, U0=0.02))
    assert np.allclose(two.u_r(r), 2.0 * one.u_r(r), rtol=1e-13)
    assert np.allclose(two.P(r)[1], 2.0 * one.P(r)[1], rtol=1e-13)


def test_mu_c_plays_no_role():
    r = np.linspace(0.0, 1.0, 65)
    base = solution(mu_c=0.0)
    for mc in (1.0, 100.0):
        alt = solution(mu_c=mc)
        assert np.array_equal(alt.u_r(r), base.u_r(r))
        assert np.array_equal(alt.P(r)[0], base.P(r)[0])
        assert np.array_equal(alt.stress(r)[0], base.stress(r)[0])


def test_analytic_residuals_small():
    r = np.linspace(1e-3, 1.0 - 1e-3, 200)
    for name in material.preset_names():
        for L_c in (0.5, 2.0):
            sol = solution(name, L_c=L_c)
            res = closedform.analytic_residuals(sol, r)
            assert np.abs(res).max() < 1e-8


def test_force_stress_equilibrium():
    # d(sigma_rr)/dr + (sigma_rr - sigma_thth)/r = 0 checked by differences
    sol = solution()
    r = np.linspace(0.05, 0.95, 901)
    h = r[1] - r[0]
    s_rr, s_tt, *_ = sol.stress(r)
    # fourth-order central first derivative; second order is not accurate
    # enough to resolve the 1e-8 equilibrium defect through the boundary layer
    d1 = (-s_rr[4:] + 8.0 * s_rr[3:-1] - 8.0 * s_rr[1:-3] + s_rr[:-4]) / (12 * h)
    div = d1 + (s_rr[2:-2] - s_tt[2:-2]) / r[2:-2]
    s_rr_R = sol.stress(SETUP.R)[0]
    assert np.abs(div).max() < 1e-8 * abs(s_rr_R)


def test_moment_vanishes_at_axis():
    sol = solution()
    assert sol.m_zth(0.0) == 0.0
    assert sol.curl_zth(0.0) == 0.0


def test_radius_domain_checked():
    sol = solution()
    with pytest.raises(ValueError):
        sol.u_r(-0.1)
    with pytest.raises(ValueError):
        sol.u_r(1.1)


def test_lc_zero_input_dispatches():
    mm = material.preset("set3", L_c=0.0)
    sol = closedform.Solution(material.full_params(mm), SETUP)
    assert sol.regime == "lc_zero"
    r = np.linspace(0.0, 1.0, 9)
    assert np.allclose(sol.u_r(r), SETUP.U0 * r / SETUP.R, rtol=1e-15)
    p = material.full_params(mm)
    expected = p.kappa_e / (p.kappa_e + p.kappa_m) * SETUP.U0 / SETUP.R
    assert np.allclose(sol.P(r)[0], expected, rtol=1e-15)


def test_overflow_regime_dispatches():
    assert solution(L_c=1e-4).regime == "lc_zero"
    assert solution(L_c=1e-2).regime == "general"


def test_limit_preconditions():
    p = material.full_params(material.preset("set3"))
    with pytest.raises(ValueError):
        closedform.eval_limit("zero_poisson", p, SETUP, np.array([0.5]))
    with pytest.raises(ValueError):
        closedform.eval_limit("bogus", p, SETUP, np.array([0.5]))


def test_limits_share_classical_displacement():
    p = material.full_params(material.preset("set3"))
    r = np.linspace(0.0, 1.0, 11)
    for kind in ("zero_poisson", "lc_zero", "lc_infinity"):
        params = p
        if kind == "zero_poisson":
            mm = p.macro_micro
            params = material.full_params(material.MacroMicroParams(
                lambda_M=0.0, mu_M=mm.mu_M, lambda_m=0.0, mu_m=mm.mu_m,
                L_c=mm.L_c))
        u, _, _ = closedform.eval_limit(kind, params, SETUP, r)
        assert np.allclose(u, SETUP.U0 * r / SETUP.R, rtol=1e-14, atol=1e-18)


def test_delta_zero_for_proportional_set():
    p = material.full_params(material.preset("set1", L_c=0.5))
    r = np.linspace(0.0, 1.0, 200)
    assert np.abs(closedform.delta_metric(p, SETUP, r)).max() < 1e-12


def test_delta_sign_flips_across_proportionality():
    # set-3 macro base; lambda_m swept through the proportional point
    r = np.linspace(0.05, 0.95, 50)
    deltas = []
    for beta1 in (1.0, 5.0):
        mm = material.MacroMicroParams(
            lambda_M=1.75, mu_M=5.9, lambda_m=beta1 * 1.75, mu_m=10.55,
            L_c=0.2)
        sol = closedform.Solution(material.full_params(mm), SETUP)
        deltas.append(sol.delta(r))
    assert np.all(deltas[0] < 0.0)
    assert np.all(deltas[1] > 0.0)


def test_max_delta_shrinks_from_small_beta2_toward_proportional_point():
    # weaker, provable part of the micro-shear sweep claim: max|delta|
    # decreases monotonically up to the proportional point mu_m/mu_M =
    # lambda_m/lambda_M ~ 4.7, and at beta2 = 20 is below the beta2 = 1.5
    # value
    r = np.linspace(0.005, 0.995, 199)
    maxima = []
    for beta2 in (1.5, 2.5, 3.5, 4.5, 20.0):
        mm = material.MacroMicroParams(lambda_M=1.75, mu_M=5.9,
                                       lambda_m=8.22, mu_m=beta2 * 5.9,
                                       L_c=0.2)
        sol = closedform.Solution(material.full_params(mm), SETUP)
        maxima.append(np.abs(sol.delta(r)).max())
    assert maxima[0] > maxima[1] > maxima[2] > maxima[3]
    assert maxima[4] < maxima[0]


def test_energy_scales_quadratically():
    p = material.full_params(material.preset("set3", L_c=0.5))
    sol1 = closedform.Solution(p, SETUP)
    sol2 = closedform.Solution(p, closedform.ProblemSetup(R=1.0, U0=0.02))
    E1 = closedform.total_energy(p, SETUP, closedform.EnergyFields.from_solution(sol1))
    E2 = closedform.total_energy(p, sol2.setup,
                                 closedform.EnergyFields.from_solution(sol2))
    assert E2 == pytest.approx(4.0 * E1, rel=1e-12)
    assert E1 > 0.0


def test_energy_from_values_close_to_analytic_derivatives():
    p = material.full_params(material.preset("set3", L_c=0.5))
    sol = closedform.Solution(p, SETUP)
    exact = closedform.EnergyFields.from_solution(sol, n_nodes=2049)
    approx = closedform.EnergyFields.from_values(
        exact.r, exact.u, exact.P_rr, exact.P_thth)
    E_exact = closedform.total_energy(p, SETUP, exact)
    E_approx = closedform.total_energy(p, SETUP, approx)
    assert E_approx == pytest.approx(E_exact, rel=1e-6)


def test_minimality_margin_equals_perturbation_energy():
    p = material.full_params(material.preset("set3", L_c=0.5))
    trials = closedform.minimality_trials(p, SETUP, n_trials=5, seed=3)
    for margin, quad in trials:
        assert margin > 0.0
        assert margin == pytest.approx(quad, rel=1e-8)
