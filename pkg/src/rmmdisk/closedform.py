"""Closed-form solution of the axisymmetric radial extension problem.

A long circular cylinder of radius R (plane strain) is stretched by a uniform
radial boundary displacement U0.  Displacement u_r and the micro-distortion
components P_rr, P_thth carry all the structure; P_rth = P_thr = 0 and the
Cosserat modulus mu_c drops out entirely.

The micro-distortion trace Z = P_rr + P_thth satisfies a modified Bessel
equation, so every field is a combination of r, I0(sqrt(a) r) and
I1(sqrt(a) r) with two constants (C1, D1) fixed by the boundary displacement
and the consistent coupling condition P_thth(R) = U0/R.

When sqrt(a) R is so large that I0 would overflow (deep L_c -> 0 regime) the
evaluation dispatches to the analytic small-L_c limit fields instead.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .bessel import (
    bessel_i0,
    bessel_i1,
    bessel_i1_over_x,
    di1_over_x_dx,
    d2i1_over_x_dx2,
)
from .material import DegenerateParameterError, FullParams

# Above this sqrt(a)*R the Bessel terms overflow float64; the solution is
# indistinguishable from its L_c -> 0 limit outside a boundary layer thinner
# than any reasonable sampling anyway.
X_DISPATCH = 600.0


@dataclass(frozen=True)
class ProblemSetup:
    R: float
    U0: float

    def __post_init__(self):
        if not self.R > 0.0:
            raise ValueError(f"R must be positive, got {self.R}")


@dataclass(frozen=True)
class SolutionCoefficients:
    """Scalars that fully determine the closed-form fields."""

    a: float
    b: float
    A: float
    B: float
    xi1: float
    xi2: float
    xi3: float
    C1: float
    D1: float


@dataclass(frozen=True)
class FieldSample:
    r: float
    u_r: float
    P_rr: float
    P_thth: float
    P_rth: float
    P_thr: float
    Z: float
    sigma_rr: float
    sigma_thth: float
    sigma_micro_rr: float
    sigma_micro_thth: float
    m_zth: float
    energy_density: float


def shape_factors(params: FullParams) -> dict:
    """L_c-independent scalars of the solution: A, B, xi1..xi3, a*L_c^2."""
    mu_e, mu_m = params.mu_e, params.mu_m
    ka_e, ka_m = params.kappa_e, params.kappa_m
    lam_e, lam_m = params.lambda_e, params.lambda_m
    S = ka_e * mu_e * (ka_m + mu_m) + ka_m * mu_m * (ka_e + mu_e)
    diff = mu_m * lam_e - mu_e * lam_m
    return {
        "A": 1.0 + diff * ka_e / S,
        "B": diff / (mu_m * (mu_e + ka_e)),
        "xi1": -(ka_m + mu_m) / (2.0 * mu_m),
        "xi2": -mu_e * (ka_m + mu_m) / (mu_m * (ka_e + mu_e)),
        "xi3": ka_m * mu_m * (ka_e + mu_e) / S,
        "a_Lc2": 4.0 / params.mu_M * (
            mu_e * ka_e / (ka_e + mu_e) + mu_m * ka_m / (ka_m + mu_m)
        ),
    }


def compute_coefficients(params: FullParams, setup: ProblemSetup) -> SolutionCoefficients:
    """Solve the two boundary equations for C1, D1 and assemble all scalars.

    Requires L_c > 0 and sqrt(a) R within float range; the L_c = 0 and deep
    small-L_c regimes are handled by the limit formulas (see Solution).
    """
    if not params.L_c > 0.0:
        raise ValueError("compute_coefficients requires L_c > 0")
    f = shape_factors(params)
    a = f["a_Lc2"] / params.L_c**2
    x_R = np.sqrt(a) * setup.R
    if x_R > X_DISPATCH:
        raise OverflowError(
            f"sqrt(a)*R = {x_R:.3g} too large for direct Bessel evaluation; "
            "use the small-L_c limit"
        )
    A, B = f["A"], f["B"]
    xi1, xi2, xi3 = f["xi1"], f["xi2"], f["xi3"]
    i0R, i1R = bessel_i0(x_R), bessel_i1(x_R)
    N = i1R * (2.0 * xi1 - xi2) - xi1 * x_R * i0R
    den = A * N + B * xi3 * i1R
    if den == 0.0 or abs(den) < 1e-300:
        raise DegenerateParameterError(
            "no valid solution: boundary system is singular "
            f"(A*N + B*xi3*I1 = {den})"
        )
    C1 = (2.0 * setup.U0 / setup.R) * N / den
    D1 = setup.U0 * xi3 * np.sqrt(a) / den
    b = 4.0 * C1 * params.kappa_e * params.mu_m / (
        params.mu_M * params.L_c**2 * (params.kappa_m + params.mu_m)
    )
    return SolutionCoefficients(a=a, b=b, A=A, B=B, xi1=xi1, xi2=xi2, xi3=xi3,
                                C1=C1, D1=D1)


def _check_radius(setup, r):
    rr = np.asarray(r, dtype=float)
    if np.any(rr < -1e-12 * setup.R) or np.any(rr > setup.R * (1.0 + 1e-12)):
        raise ValueError(f"radius outside [0, R={setup.R}]")
    return np.clip(rr, 0.0, setup.R)


def eval_u_r(coeffs, params, setup, r):
    """Radial displacement u_r(r) = C1 A r/2 + (D1 B / sqrt(a)) I1(sqrt(a) r)."""
    rr = _check_radius(setup, r)
    s = np.sqrt(coeffs.a)
    out = 0.5 * coeffs.C1 * coeffs.A * rr + coeffs.D1 * coeffs.B / s * bessel_i1(s * rr)
    return float(out) if np.isscalar(r) else out


def eval_du_r(coeffs, params, setup, r):
    """du_r/dr via the exact identity I1'(x) = I0(x) - I1(x)/x."""
    rr = _check_radius(setup, r)
    x = np.sqrt(coeffs.a) * rr
    out = 0.5 * coeffs.C1 * coeffs.A + coeffs.D1 * coeffs.B * (
        bessel_i0(x) - bessel_i1_over_x(x)
    )
    return float(out) if np.isscalar(r) else out


def eval_u_r_over_r(coeffs, params, setup, r):
    """u_r/r, with the removable singularity at r = 0 handled by I1(x)/x."""
    rr = _check_radius(setup, r)
    x = np.sqrt(coeffs.a) * rr
    out = 0.5 * coeffs.C1 * coeffs.A + coeffs.D1 * coeffs.B * bessel_i1_over_x(x)
    return float(out) if np.isscalar(r) else out


def eval_P(coeffs, params, setup, r):
    """Micro-distortion components: returns (P_rr, P_thth, Z)."""
    rr = _check_radius(setup, r)
    x = np.sqrt(coeffs.a) * rr
    i0 = bessel_i0(x)
    Z = coeffs.b / coeffs.a + coeffs.D1 * i0
    P_thth = (
        0.5 * coeffs.C1 * (coeffs.A - coeffs.xi3)
        - coeffs.D1 * coeffs.xi1 * i0
        + coeffs.D1 * (coeffs.B + 2.0 * coeffs.xi1 - coeffs.xi2) * bessel_i1_over_x(x)
    )
    P_rr = Z - P_thth
    if np.isscalar(r):
        return float(P_rr), float(P_thth), float(Z)
    return P_rr, P_thth, Z


def eval_dP(coeffs, params, setup, r):
    """First derivatives (dP_rr/dr, dP_thth/dr, dZ/dr), all analytic."""
    rr = _check_radius(setup, r)
    s = np.sqrt(coeffs.a)
    x = s * rr
    dZ = coeffs.D1 * s * bessel_i1(x)
    dP_thth = s * coeffs.D1 * (
        -coeffs.xi1 * bessel_i1(x)
        + (coeffs.B + 2.0 * coeffs.xi1 - coeffs.xi2) * di1_over_x_dx(x)
    )
    dP_rr = dZ - dP_thth
    if np.isscalar(r):
        return float(dP_rr), float(dP_thth), float(dZ)
    return dP_rr, dP_thth, dZ


def eval_d2P(coeffs, params, setup, r):
    """Second derivatives (d2P_rr/dr2, d2P_thth/dr2, d2Z/dr2)."""
    rr = _check_radius(setup, r)
    s = np.sqrt(coeffs.a)
    x = s * rr
    di1 = bessel_i0(x) - bessel_i1_over_x(x)  # I1'(x)
    d2Z = coeffs.D1 * coeffs.a * di1
    d2P_thth = coeffs.a * coeffs.D1 * (
        -coeffs.xi1 * di1
        + (coeffs.B + 2.0 * coeffs.xi1 - coeffs.xi2) * d2i1_over_x_dx2(x)
    )
    d2P_rr = d2Z - d2P_thth
    if np.isscalar(r):
        return float(d2P_rr), float(d2P_thth), float(d2Z)
    return d2P_rr, d2P_thth, d2Z


def eval_d2u_r(coeffs, params, setup, r):
    rr = _check_radius(setup, r)
    s = np.sqrt(coeffs.a)
    x = s * rr
    out = coeffs.D1 * coeffs.B * s * (bessel_i1(x) - di1_over_x_dx(x))
    return float(out) if np.isscalar(r) else out


def eval_m_zth(coeffs, params, setup, r):
    """Moment m_zth = mu_M L_c^2 (P_thth' + (P_thth - P_rr)/r).

    Uses the exact reduction of the curl to -xi1 * dZ/dr, which is regular
    at the axis.
    """
    rr = _check_radius(setup, r)
    s = np.sqrt(coeffs.a)
    curl = -coeffs.xi1 * coeffs.D1 * s * bessel_i1(s * rr)
    out = params.mu_M * params.L_c**2 * curl
    return float(out) if np.isscalar(r) else out


def eval_stress(coeffs, params, setup, r):
    """Force stress, micro stress and moment at radius r.

    Returns (sigma_rr, sigma_thth, sigma_micro_rr, sigma_micro_thth, m_zth);
    sigma_rth = sigma_thr = m_zr = 0 for this problem.
    """
    du = eval_du_r(coeffs, params, setup, r)
    uor = eval_u_r_over_r(coeffs, params, setup, r)
    P_rr, P_thth, Z = eval_P(coeffs, params, setup, r)
    tre = du + uor - Z
    sigma_rr = 2.0 * params.mu_e * (du - P_rr) + params.lambda_e * tre
    sigma_thth = 2.0 * params.mu_e * (uor - P_thth) + params.lambda_e * tre
    sigma_micro_rr = 2.0 * params.mu_m * P_rr + params.lambda_m * Z
    sigma_micro_thth = 2.0 * params.mu_m * P_thth + params.lambda_m * Z
    m_zth = eval_m_zth(coeffs, params, setup, r)
    return sigma_rr, sigma_thth, sigma_micro_rr, sigma_micro_thth, m_zth


def energy_density_point(params, du, u_over_r, P_rr, P_thth, curl_zth,
                         P_rth=0.0, P_thr=0.0, dP_thr=0.0, r=None):
    """Quadratic energy density W of the model for axisymmetric fields.

    curl_zth = P_thth' + (P_thth - P_rr)/r must be supplied by the caller
    (analytically for the closed form, by differences for grid fields).
    """
    e_rr = du - P_rr
    e_tt = u_over_r - P_thth
    shear_sym = 0.5 * (P_rth + P_thr)  # sym(Du - P) off-diagonal, sign-squared
    shear_skw = 0.5 * (P_rth - P_thr)
    if r is None:
        curl_zr = 0.0
    else:
        curl_zr = dP_thr + np.where(np.asarray(r) > 0.0,
                                    (P_rth + P_thr) / np.where(np.asarray(r) > 0.0, r, 1.0),
                                    0.0)
    Z = P_rr + P_thth
    tre = e_rr + e_tt
    W = (
        params.mu_e * (e_rr**2 + e_tt**2 + 2.0 * shear_sym**2)
        + 0.5 * params.lambda_e * tre**2
        + 2.0 * params.mu_c * shear_skw**2
        + params.mu_m * (P_rr**2 + P_thth**2 + 2.0 * shear_sym**2)
        + 0.5 * params.lambda_m * Z**2
        + 0.5 * params.mu_M * params.L_c**2 * (curl_zr**2 + curl_zth**2)
    )
    return W


class Solution:
    """Evaluates all closed-form fields, with small-L_c limit dispatch.

    regime is "general" (Bessel closed form) or "lc_zero" (L_c = 0 input or
    sqrt(a) R beyond float range; fields are the analytic limit).
    """

    def __init__(self, params: FullParams, setup: ProblemSetup):
        self.params = params
        self.setup = setup
        self.coeffs = None
        if params.L_c == 0.0:
            self.regime = "lc_zero"
        else:
            try:
                self.coeffs = compute_coefficients(params, setup)
                self.regime = "general"
            except OverflowError:
                self.regime = "lc_zero"
        if self.regime == "lc_zero":
            c = setup.U0 / setup.R
            self._P_limit = params.kappa_e / (params.kappa_e + params.kappa_m) * c

    def u_r(self, r):
        if self.regime == "lc_zero":
            rr = _check_radius(self.setup, r)
            out = self.setup.U0 * rr / self.setup.R
            return float(out) if np.isscalar(r) else out
        return eval_u_r(self.coeffs, self.params, self.setup, r)

    def du_r(self, r):
        if self.regime == "lc_zero":
            rr = _check_radius(self.setup, r)
            out = np.full_like(rr, self.setup.U0 / self.setup.R)
            return float(out) if np.isscalar(r) else out
        return eval_du_r(self.coeffs, self.params, self.setup, r)

    def u_r_over_r(self, r):
        if self.regime == "lc_zero":
            return self.du_r(r)
        return eval_u_r_over_r(self.coeffs, self.params, self.setup, r)

    def P(self, r):
        if self.regime == "lc_zero":
            rr = _check_radius(self.setup, r)
            P = np.full_like(rr, self._P_limit)
            if np.isscalar(r):
                return float(P), float(P), 2.0 * float(P)
            return P, P.copy(), 2.0 * P
        return eval_P(self.coeffs, self.params, self.setup, r)

    def stress(self, r):
        if self.regime == "lc_zero":
            rr = _check_radius(self.setup, r)
            c = self.setup.U0 / self.setup.R
            P = self._P_limit
            tre = 2.0 * (c - P)
            s_rr = 2.0 * self.params.mu_e * (c - P) + self.params.lambda_e * tre
            s_mic = 2.0 * self.params.mu_m * P + self.params.lambda_m * 2.0 * P
            shape = np.full_like(rr, 1.0)
            out = (s_rr * shape, s_rr * shape, s_mic * shape, s_mic * shape,
                   0.0 * shape)
            if np.isscalar(r):
                return tuple(float(v) for v in out)
            return out
        return eval_stress(self.coeffs, self.params, self.setup, r)

    def curl_zth(self, r):
        if self.regime == "lc_zero":
            rr = _check_radius(self.setup, r)
            out = np.zeros_like(rr)
            return float(out) if np.isscalar(r) else out
        rr = _check_radius(self.setup, r)
        s = np.sqrt(self.coeffs.a)
        out = -self.coeffs.xi1 * self.coeffs.D1 * s * bessel_i1(s * rr)
        return float(out) if np.isscalar(r) else out

    def m_zth(self, r):
        if self.regime == "lc_zero":
            rr = _check_radius(self.setup, r)
            out = np.zeros_like(rr)
            return float(out) if np.isscalar(r) else out
        return eval_m_zth(self.coeffs, self.params, self.setup, r)

    def energy_density(self, r):
        P_rr, P_thth, _ = self.P(r)
        return energy_density_point(self.params, self.du_r(r),
                                    self.u_r_over_r(r), P_rr, P_thth,
                                    self.curl_zth(r))

    def delta(self, r):
        """((u_r)_micromorphic - (u_r)_classical) / U0."""
        rr = _check_radius(self.setup, r)
        if self.setup.U0 == 0.0:
            out = np.zeros_like(rr)
        else:
            out = (self.u_r(rr)
                   - self.setup.U0 * rr / self.setup.R) / self.setup.U0
        return float(out) if np.isscalar(r) else out

    def sample(self, r) -> FieldSample:
        P_rr, P_thth, Z = self.P(r)
        s_rr, s_tt, sm_rr, sm_tt, m = self.stress(r)
        return FieldSample(
            r=float(r), u_r=self.u_r(r), P_rr=P_rr, P_thth=P_thth,
            P_rth=0.0, P_thr=0.0, Z=Z, sigma_rr=s_rr, sigma_thth=s_tt,
            sigma_micro_rr=sm_rr, sigma_micro_thth=sm_tt, m_zth=m,
            energy_density=self.energy_density(r),
        )


def delta_metric(params, setup, r):
    return Solution(params, setup).delta(r)


# ---------------------------------------------------------------------------
# Limit cases


def eval_limit(kind, params, setup, r):
    """Dedicated limit-case formulas; returns (u_r, P_rr, P_thth).

    kind: "zero_poisson" (requires lambda_e = lambda_m = 0), "lc_zero",
    "lc_infinity".  u_r = U0 r/R in every case.
    """
    rr = _check_radius(setup, r)
    c = setup.U0 / setup.R
    u = c * rr
    mu_e, mu_m = params.mu_e, params.mu_m
    ka_e, ka_m = params.kappa_e, params.kappa_m

    if kind == "zero_poisson":
        scale = max(mu_e, mu_m)
        if abs(params.lambda_e) > 1e-10 * scale or abs(params.lambda_m) > 1e-10 * scale:
            raise ValueError("zero_poisson limit requires lambda_e = lambda_m = 0")
        a = 2.0 * (mu_e + mu_m) ** 2 / (mu_e * mu_m * params.L_c**2)
        xi3 = mu_m / (mu_e + mu_m)
        s = np.sqrt(a)
        x, x_R = s * rr, s * setup.R
        denom = x_R * bessel_i0(x_R) - bessel_i1(x_R)
        # (x I0(x) - I1(x))/r = s*(I0(x) - I1(x)/x), regular at the axis
        P_thth = c * (1.0 - xi3) + setup.U0 * xi3 * s * (
            bessel_i0(x) - bessel_i1_over_x(x)
        ) / denom
        Z = 2.0 * c * (1.0 - xi3) + setup.U0 * xi3 * s * bessel_i0(x) / denom
        P_rr = Z - P_thth
    elif kind == "lc_zero":
        # Pointwise minimization with the curvature term switched off gives
        # P_rr = P_thth = kappa_e/(kappa_e + kappa_m) * U0/R.
        P = ka_e / (ka_e + ka_m) * c * np.ones_like(rr)
        P_rr, P_thth = P, P.copy()
    elif kind == "lc_infinity":
        # Curl P -> 0 forces P = (U0/R) * identity.
        f = shape_factors(params)
        S = ka_e * mu_e * (ka_m + mu_m) + ka_m * mu_m * (ka_e + mu_e)
        G = ka_e * mu_m * (ka_e + mu_e) / S
        P_thth = c * np.ones_like(rr)
        P_rr_val = (G * f["xi2"] - f["xi3"]) * 2.0 * c / (
            f["A"] * f["xi2"] - f["B"] * f["xi3"]
        ) - c
        P_rr = P_rr_val * np.ones_like(rr)
    else:
        raise ValueError(f"unknown limit kind {kind!r}")

    if np.isscalar(r):
        return float(u), float(P_rr), float(P_thth)
    return u, P_rr, P_thth


def analytic_residuals(solution: Solution, r):
    """Residuals of the six governing ODEs using exact field derivatives.

    Evaluated at interior radii (0 < r < R); returns an array of shape
    (6, len(r)) scaled by mu_M U0 / R.  The shear equations are identically
    zero because P_rth = P_thr = 0.
    """
    if solution.regime != "general":
        raise ValueError("analytic residuals need the general-regime solution")
    p, setup, coeffs = solution.params, solution.setup, solution.coeffs
    rr = np.asarray(r, dtype=float)
    if np.any(rr <= 0.0) or np.any(rr >= setup.R):
        raise ValueError("residual radii must be strictly interior")
    u = solution.u_r(rr)
    du = solution.du_r(rr)
    d2u = eval_d2u_r(coeffs, p, setup, rr)
    P_rr, P_tt, Z = solution.P(rr)
    dP_rr, dP_tt, _ = eval_dP(coeffs, p, setup, rr)
    d2P_rr, d2P_tt, _ = eval_d2P(coeffs, p, setup, rr)

    two_mu_lam = 2.0 * p.mu_e + p.lambda_e
    mL2 = p.mu_M * p.L_c**2
    e1 = (two_mu_lam * (d2u + du / rr - u / rr**2)
          - two_mu_lam * dP_rr - p.lambda_e * dP_tt
          + 2.0 * p.mu_e * (P_tt - P_rr) / rr)
    e2 = np.zeros_like(rr)
    e3 = (two_mu_lam * (du - P_rr) + p.lambda_e * (u / rr - P_tt)
          - 2.0 * p.mu_m * P_rr - p.lambda_m * Z
          + mL2 / rr * (dP_tt + (P_tt - P_rr) / rr))
    e4 = np.zeros_like(rr)
    e5 = np.zeros_like(rr)
    e6 = (two_mu_lam * (u / rr - P_tt) + p.lambda_e * (du - P_rr)
          - 2.0 * p.mu_m * P_tt - p.lambda_m * Z
          + mL2 * (d2P_tt + (dP_tt - dP_rr) / rr - (P_tt - P_rr) / rr**2))
    scale = p.mu_M * setup.U0 / setup.R
    return np.vstack([e1, e2, e3, e4, e5, e6]) / scale


# ---------------------------------------------------------------------------
# Energy quadrature


@dataclass
class EnergyFields:
    """Axisymmetric fields on a uniform node grid [0, R] for the energy.

    Derivative arrays are supplied by the caller so analytic fields are not
    degraded by numerical differentiation; use from_values() when only the
    values are known.
    """

    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    P_rr: np.ndarray
    P_thth: np.ndarray
    dP_thth: np.ndarray
    P_rth: np.ndarray
    P_thr: np.ndarray
    dP_thr: np.ndarray

    @classmethod
    def from_values(cls, r, u, P_rr, P_thth, P_rth=None, P_thr=None):
        r = np.asarray(r, dtype=float)
        zeros = np.zeros_like(r)
        P_rth = zeros if P_rth is None else np.asarray(P_rth, float)
        P_thr = zeros if P_thr is None else np.asarray(P_thr, float)
        return cls(r=r, u=np.asarray(u, float), du=np.gradient(u, r, edge_order=2),
                   P_rr=np.asarray(P_rr, float), P_thth=np.asarray(P_thth, float),
                   dP_thth=np.gradient(P_thth, r, edge_order=2),
                   P_rth=P_rth, P_thr=P_thr,
                   dP_thr=np.gradient(P_thr, r, edge_order=2))

    @classmethod
    def from_solution(cls, solution: Solution, n_nodes: int = 2049):
        r = np.linspace(0.0, solution.setup.R, n_nodes)
        P_rr, P_thth, _ = solution.P(r)
        if solution.regime == "general":
            _, dP_thth, _ = eval_dP(solution.coeffs, solution.params,
                                    solution.setup, r)
        else:
            dP_thth = np.zeros_like(r)
        zeros = np.zeros_like(r)
        return cls(r=r, u=solution.u_r(r), du=solution.du_r(r),
                   P_rr=P_rr, P_thth=P_thth, dP_thth=dP_thth,
                   P_rth=zeros, P_thr=zeros.copy(), dP_thr=zeros.copy())


def total_energy(params: FullParams, setup: ProblemSetup,
                 fields: EnergyFields) -> float:
    """2 pi * integral_0^R W(r) r dr by composite Simpson quadrature."""
    r = fields.r
    n = len(r)
    arrays = (fields.u, fields.du, fields.P_rr, fields.P_thth, fields.dP_thth,
              fields.P_rth, fields.P_thr, fields.dP_thr)
    if any(len(x) != n for x in arrays):
        raise ValueError("inconsistent grid: field arrays must match r in length")
    if n < 3:
        raise ValueError("energy grid needs at least 3 nodes")
    # The r weight kills the axis node; evaluate W away from r = 0 only.
    ri = r[1:]
    W = energy_density_point(
        params,
        du=fields.du[1:],
        u_over_r=fields.u[1:] / ri,
        P_rr=fields.P_rr[1:],
        P_thth=fields.P_thth[1:],
        curl_zth=fields.dP_thth[1:] + (fields.P_thth[1:] - fields.P_rr[1:]) / ri,
        P_rth=fields.P_rth[1:],
        P_thr=fields.P_thr[1:],
        dP_thr=fields.dP_thr[1:],
        r=ri,
    )
    integrand = np.concatenate(([0.0], W * ri))
    return 2.0 * np.pi * float(simpson(integrand, x=r))


def minimality_trials(params: FullParams, setup: ProblemSetup,
                      n_trials: int = 20, amplitude: float = 1e-3,
                      seed: int = 0, n_nodes: int = 2049):
    """Energy margins of randomized admissible perturbations of the solution.

    Each trial perturbs the closed form by smooth modes that vanish wherever
    the boundary conditions constrain the fields (u at r = 0 and r = R,
    P_thth and P_rth at r = R).  Returns a list of (margin, quad) pairs where
    margin = E(solution + perturbation) - E(solution) and quad is the energy
    of the perturbation alone.  For the quadratic functional the two agree
    exactly when the solution is the minimizer, so margin >= quad up to
    quadrature rounding certifies minimality.
    """
    rng = np.random.default_rng(seed)
    sol = Solution(params, setup)
    base = EnergyFields.from_solution(sol, n_nodes=n_nodes)
    E0 = total_energy(params, setup, base)
    r = base.r
    R = setup.R
    scale = amplitude * setup.U0 / R * R  # field amplitude eps * U0

    out = []
    for _ in range(n_trials):
        c = rng.uniform(-1.0, 1.0, size=7)
        k1 = np.pi * r / R
        k2 = 2.0 * np.pi * r / R
        du_modes = (c[0] * np.cos(k1) * np.pi / R
                    + c[1] * np.cos(k2) * 2.0 * np.pi / R)
        u_p = scale * (c[0] * np.sin(k1) + c[1] * np.sin(k2))
        du_p = scale * du_modes
        ptt_p = scale / R * (c[2] * np.sin(k1) + c[3] * np.sin(k2))
        dptt_p = scale / R * (c[2] * np.cos(k1) * np.pi / R
                              + c[3] * np.cos(k2) * 2.0 * np.pi / R)
        # P_rr is unconstrained at the boundary; use a mode with prr(0)=prr'(0) ok
        prr_p = scale / R * c[4] * np.cos(np.pi * r / (2.0 * R))
        prt_p = scale / R * c[5] * np.sin(k1)
        ptr_p = scale / R * c[6] * np.sin(k1)
        dptr_p = scale / R * c[6] * np.cos(k1) * np.pi / R

        pert = EnergyFields(r=r, u=base.u + u_p, du=base.du + du_p,
                            P_rr=base.P_rr + prr_p,
                            P_thth=base.P_thth + ptt_p,
                            dP_thth=base.dP_thth + dptt_p,
                            P_rth=base.P_rth + prt_p,
                            P_thr=base.P_thr + ptr_p,
                            dP_thr=base.dP_thr + dptr_p)
        alone = EnergyFields(r=r, u=u_p, du=du_p, P_rr=prr_p, P_thth=ptt_p,
                             dP_thth=dptt_p, P_rth=prt_p, P_thr=ptr_p,
                             dP_thr=dptr_p)
        margin = total_energy(params, setup, pert) - E0
        quad = total_energy(params, setup, alone)
        out.append((margin, quad))
    return out
