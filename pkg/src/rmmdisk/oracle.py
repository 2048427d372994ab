"""Finite-difference boundary-value oracle for the six axisymmetric ODEs.

This solver never touches the Bessel closed form: it discretizes the governing
system with second-order central differences on a cell-centered radial grid
and solves the resulting banded linear system directly.  Agreement with the
closed form (at the expected O(h^2) rate) is then an independent check.

Grid: cells r_i = (i + 1/2) h, h = R/n, so no node sits on the coordinate
singularity at r = 0.  Ghost values across the axis follow smoothness parity:
u_r is odd, all P components even.  At the outer face the boundary rows impose
u_r(R) = U0, P_thth(R) = U0/R and P_rth(R) = 0 via quadratic extrapolation
from the last three cell centers; the shear equations are kept in the interior
so P_rth = P_thr = 0 has to emerge rather than being imposed there.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

# Unknown ordering inside a cell.
_U, _PRR, _PTT, _PRT, _PTR = range(5)
_NVARS = 5
# Stencils reach at most two cells away (one-sided rows), so the interleaved
# matrix has bandwidth 2*5 + 4.
_BAND = 14


class SingularSystemError(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialGrid:
    n_cells: int
    R: float

    def __post_init__(self):
        if self.n_cells < 16:
            raise ValueError("need at least 16 cells")

    @property
    def h(self):
        return self.R / self.n_cells

    @property
    def centers(self):
        return (np.arange(self.n_cells) + 0.5) * self.h


@dataclass
class GridSolution:
    grid: RadialGrid
    u_r: np.ndarray
    P_rr: np.ndarray
    P_thth: np.ndarray
    P_rth: np.ndarray
    P_thr: np.ndarray

    def boundary_value(self, field):
        """Quadratic extrapolation of a field array to the outer face r = R."""
        f = getattr(self, field)
        return (15.0 * f[-1] - 10.0 * f[-2] + 3.0 * f[-3]) / 8.0


# Parity of each unknown across r = 0 (+1 even, -1 odd).
_PARITY = {_U: -1.0, _PRR: 1.0, _PTT: 1.0, _PRT: 1.0, _PTR: 1.0}


class _Assembler:
    def __init__(self, n):
        self.n = n
        self.N = _NVARS * n
        self.ab = np.zeros((2 * _BAND + 1, self.N))
        self.rhs = np.zeros(self.N)

    def add(self, row, cell, var, w):
        """Accumulate coefficient w for unknown (cell, var) into a row.

        cell = -1 is the axis ghost, folded onto cell 0 with its parity sign.
        """
        if cell == -1:
            cell, w = 0, w * _PARITY[var]
        col = _NVARS * cell + var
        self.ab[_BAND + row - col, col] += w

    def solve(self):
        try:
            x = solve_banded((_BAND, _BAND), self.ab, self.rhs)
        except np.linalg.LinAlgError as err:
            raise SingularSystemError(f"banded solve failed: {err}") from err
        if not np.all(np.isfinite(x)):
            raise SingularSystemError("banded solve produced non-finite values")
        return x


def _d1_stencil(i, n, h):
    """Second-order first-derivative stencil as [(cell, weight)]."""
    if i == n - 1:
        return [(i, 1.5 / h), (i - 1, -2.0 / h), (i - 2, 0.5 / h)]
    return [(i + 1, 0.5 / h), (i - 1, -0.5 / h)]


def _d2_stencil(i, h):
    return [(i + 1, 1.0 / h**2), (i, -2.0 / h**2), (i - 1, 1.0 / h**2)]


def solve_bvp(params, setup, n_cells) -> GridSolution:
    """Solve the discretized six-ODE system; returns fields at cell centers."""
    grid = RadialGrid(n_cells=n_cells, R=setup.R)
    n, h = n_cells, grid.h
    r = grid.centers
    asm = _Assembler(n)

    mu_e, lam_e = params.mu_e, params.lambda_e
    mu_m, lam_m = params.mu_m, params.lambda_m
    mu_c = params.mu_c
    tml = 2.0 * mu_e + lam_e
    mL2 = params.mu_M * params.L_c**2

    for i in range(n):
        ri = r[i]
        d1 = _d1_stencil(i, n, h)
        if i < n - 1:
            d2 = _d2_stencil(i, h)

        row_u = _NVARS * i + _U
        row_prr = _NVARS * i + _PRR
        row_ptt = _NVARS * i + _PTT
        row_prt = _NVARS * i + _PRT
        row_ptr = _NVARS * i + _PTR

        # Force balance -> u rows (interior cells only).
        if i < n - 1:
            for c, w in d2:
                asm.add(row_u, c, _U, tml * w)
            for c, w in d1:
                asm.add(row_u, c, _U, tml * w / ri)
                asm.add(row_u, c, _PRR, -tml * w)
                asm.add(row_u, c, _PTT, -lam_e * w)
            asm.add(row_u, i, _U, -tml / ri**2)
            asm.add(row_u, i, _PTT, 2.0 * mu_e / ri)
            asm.add(row_u, i, _PRR, -2.0 * mu_e / ri)
        else:
            # u_r(R) = U0 by quadratic extrapolation to the face.
            asm.add(row_u, i, _U, 15.0 / 8.0)
            asm.add(row_u, i - 1, _U, -10.0 / 8.0)
            asm.add(row_u, i - 2, _U, 3.0 / 8.0)
            asm.rhs[row_u] = setup.U0

        # Normal P_rr relaxation equation -> P_rr rows (all cells).
        for c, w in d1:
            asm.add(row_prr, c, _U, tml * w)
            asm.add(row_prr, c, _PTT, mL2 * w / ri)
        asm.add(row_prr, i, _U, lam_e / ri)
        asm.add(row_prr, i, _PRR, -tml - 2.0 * mu_m - lam_m - mL2 / ri**2)
        asm.add(row_prr, i, _PTT, -lam_e - lam_m + mL2 / ri**2)

        # Normal P_thth equation -> P_thth rows.
        if i < n - 1:
            for c, w in d1:
                asm.add(row_ptt, c, _U, lam_e * w)
                asm.add(row_ptt, c, _PTT, mL2 * w / ri)
                asm.add(row_ptt, c, _PRR, -mL2 * w / ri)
            for c, w in d2:
                asm.add(row_ptt, c, _PTT, mL2 * w)
            asm.add(row_ptt, i, _U, tml / ri)
            asm.add(row_ptt, i, _PTT, -tml - 2.0 * mu_m - lam_m - mL2 / ri**2)
            asm.add(row_ptt, i, _PRR, -lam_e - lam_m + mL2 / ri**2)
        else:
            # P_thth(R) = U0/R (consistent coupling).
            asm.add(row_ptt, i, _PTT, 15.0 / 8.0)
            asm.add(row_ptt, i - 1, _PTT, -10.0 / 8.0)
            asm.add(row_ptt, i - 2, _PTT, 3.0 / 8.0)
            asm.rhs[row_ptt] = setup.U0 / setup.R

        # Shear subsystem: first-order equation -> P_rth rows (all cells).
        asm.add(row_prt, i, _PRT, mu_e + mu_m + mu_c)
        asm.add(row_prt, i, _PTR, mu_e + mu_m - mu_c)
        asm.add(row_prt, i, _PRT, mL2 / ri**2)
        asm.add(row_prt, i, _PTR, mL2 / ri**2)
        for c, w in d1:
            asm.add(row_prt, c, _PTR, mL2 * w / ri)

        # Shear subsystem: second-order equation -> P_thr rows.
        if i < n - 1:
            asm.add(row_ptr, i, _PRT, mu_e + mu_m - mu_c)
            asm.add(row_ptr, i, _PTR, mu_e + mu_m + mu_c)
            for c, w in d2:
                asm.add(row_ptr, c, _PTR, -mL2 * w)
            asm.add(row_ptr, i, _PRT, mL2 / ri**2)
            asm.add(row_ptr, i, _PTR, mL2 / ri**2)
            for c, w in d1:
                asm.add(row_ptr, c, _PRT, -mL2 * w / ri)
                asm.add(row_ptr, c, _PTR, -mL2 * w / ri)
        else:
            # P_rth(R) = 0 closes the shear subsystem.
            asm.add(row_ptr, i, _PRT, 15.0 / 8.0)
            asm.add(row_ptr, i - 1, _PRT, -10.0 / 8.0)
            asm.add(row_ptr, i - 2, _PRT, 3.0 / 8.0)

    x = asm.solve()
    x = x.reshape(n, _NVARS)
    return GridSolution(grid=grid, u_r=x[:, _U].copy(), P_rr=x[:, _PRR].copy(),
                        P_thth=x[:, _PTT].copy(), P_rth=x[:, _PRT].copy(),
                        P_thr=x[:, _PTR].copy())


def sample_closed_form(solution, n_cells) -> GridSolution:
    """Closed-form fields sampled on the oracle's cell-centered grid."""
    grid = RadialGrid(n_cells=n_cells, R=solution.setup.R)
    r = grid.centers
    P_rr, P_thth, _ = solution.P(r)
    z = np.zeros_like(r)
    return GridSolution(grid=grid, u_r=solution.u_r(r), P_rr=P_rr,
                        P_thth=P_thth, P_rth=z, P_thr=z.copy())


def _fd1(f, h):
    return (f[2:] - f[:-2]) / (2.0 * h)


def _fd2(f, h):
    return (f[2:] - 2.0 * f[1:-1] + f[:-2]) / h**2


def residuals(fields: GridSolution, params, setup):
    """Per-equation residual norms of the six ODEs by central differences.

    Residuals are evaluated at interior cells and scaled by mu_M U0 / R.
    Returns {"eq1": {"max": ..., "l2": ...}, ...}.
    """
    n = fields.grid.n_cells
    if n < 64:
        import warnings

        warnings.warn("residual grid coarser than 64 cells; truncation error "
                      "will dominate", stacklevel=2)
    h = fields.grid.h
    r = fields.grid.centers[1:-1]
    u, prr, ptt = fields.u_r, fields.P_rr, fields.P_thth
    prt, ptr = fields.P_rth, fields.P_thr

    du, d2u = _fd1(u, h), _fd2(u, h)
    dprr = _fd1(prr, h)
    dptt, d2ptt = _fd1(ptt, h), _fd2(ptt, h)
    dprt = _fd1(prt, h)
    dptr, d2ptr = _fd1(ptr, h), _fd2(ptr, h)
    ui, prri, ptti = u[1:-1], prr[1:-1], ptt[1:-1]
    prti, ptri = prt[1:-1], ptr[1:-1]
    # 1/r-structured groups differenced as smooth composites: u/r is even
    # and (P_thth - P_rr)/r odd at the axis, so truncation stays O(h^2)
    # with bounded constants instead of degrading to O(h) near r = 0.
    rc = fields.grid.centers
    d_u_over_r = _fd1(u / rc, h)
    d_w_over_r = _fd1((ptt - prr) / rc, h)
    d_shear_over_r = _fd1((prt + ptr) / rc, h)

    mu_e, lam_e = params.mu_e, params.lambda_e
    mu_m, lam_m = params.mu_m, params.lambda_m
    mu_c = params.mu_c
    tml = 2.0 * mu_e + lam_e
    mL2 = params.mu_M * params.L_c**2
    Z = prri + ptti

    e1 = (tml * (d2u + d_u_over_r) - tml * dprr - lam_e * dptt
          + 2.0 * mu_e * (ptti - prri) / r)
    e2 = (mu_e * (dprt + dptr + 2.0 * (prti + ptri) / r)
          - mu_c * (dprt - dptr))
    e3 = (tml * (du - prri) + lam_e * (ui / r - ptti)
          - 2.0 * mu_m * prri - lam_m * Z
          + mL2 / r * (dptt + (ptti - prri) / r))
    e4 = ((mu_e + mu_m) * (prti + ptri) + mu_c * (prti - ptri)
          + mL2 * (dptr / r + (prti + ptri) / r**2))
    e5 = ((mu_e + mu_m) * (prti + ptri) + mu_c * (ptri - prti)
          + mL2 * (-d2ptr - d_shear_over_r))
    e6 = (tml * (ui / r - ptti) + lam_e * (du - prri)
          - 2.0 * mu_m * ptti - lam_m * Z
          + mL2 * (d2ptt + d_w_over_r))

    scale = params.mu_M * setup.U0 / setup.R
    if scale == 0.0:
        scale = 1.0
    out = {}
    for name, e in zip(("eq1", "eq2", "eq3", "eq4", "eq5", "eq6"),
                       (e1, e2, e3, e4, e5, e6)):
        s = e / scale
        out[name] = {"max": float(np.max(np.abs(s))),
                     "l2": float(np.sqrt(np.mean(s**2)))}
    return out


def convergence_study(params, setup, solution, n_list):
    """FD-vs-closed-form errors and observed orders over a grid sequence.

    Returns a list of dicts with keys n, err_u_r, err_P_rr, err_P_thth and
    (from the second entry on) order_u_r, order_P_rr, order_P_thth, where
    order = log2(e(n)/e(2n)) between consecutive refinements.
    """
    if sorted(n_list) != list(n_list):
        raise ValueError("n_list must be ascending")
    rows = []
    for n in n_list:
        fd = solve_bvp(params, setup, n)
        exact = sample_closed_form(solution, n)
        row = {"n": n}
        for field in ("u_r", "P_rr", "P_thth"):
            e = np.max(np.abs(getattr(fd, field) - getattr(exact, field)))
            ref = np.max(np.abs(getattr(exact, field)))
            row[f"err_{field}"] = float(e / ref) if ref > 0 else float(e)
        rows.append(row)
    for prev, cur in zip(rows, rows[1:]):
        for field in ("u_r", "P_rr", "P_thth"):
            e0, e1 = prev[f"err_{field}"], cur[f"err_{field}"]
            cur[f"order_{field}"] = float(np.log2(e0 / e1)) if e1 > 0 else float("inf")
    return rows
