"""Closed-form solver for axisymmetric extension of a relaxed micromorphic disk.

The package computes the analytic displacement and micro-distortion fields of
an isotropic relaxed micromorphic disk stretched by a prescribed boundary
displacement, and verifies them with an independent finite-difference
boundary-value solver, residual checks, limit-case formulas and an
energy-minimality test.
"""

from .bessel import (
    bessel_i0,
    bessel_i1,
    bessel_i1_over_x,
    di1_over_x_dx,
    d2i1_over_x_dx2,
)
from .material import (
    Check,
    DegenerateParameterError,
    EModuli,
    FullParams,
    MacroMicroParams,
    ValidationReport,
    derive_e_moduli,
    full_params,
    params_from_config,
    preset,
    preset_names,
    recombine_macro,
    validate,
)
from .closedform import (
    EnergyFields,
    FieldSample,
    ProblemSetup,
    Solution,
    SolutionCoefficients,
    analytic_residuals,
    compute_coefficients,
    delta_metric,
    eval_limit,
    minimality_trials,
    shape_factors,
    total_energy,
)
from .oracle import (
    GridSolution,
    RadialGrid,
    SingularSystemError,
    convergence_study,
    residuals,
    sample_closed_form,
    solve_bvp,
)

__version__ = "0.1.0"

__all__ = [
    "bessel_i0", "bessel_i1", "bessel_i1_over_x", "di1_over_x_dx",
    "d2i1_over_x_dx2",
    "Check", "DegenerateParameterError", "EModuli", "FullParams",
    "MacroMicroParams", "ValidationReport", "derive_e_moduli", "full_params",
    "params_from_config", "preset", "preset_names", "recombine_macro",
    "validate",
    "EnergyFields", "FieldSample", "ProblemSetup", "Solution",
    "SolutionCoefficients", "analytic_residuals", "compute_coefficients",
    "delta_metric", "eval_limit", "minimality_trials", "shape_factors",
    "total_energy",
    "GridSolution", "RadialGrid", "SingularSystemError", "convergence_study",
    "residuals", "sample_closed_form", "solve_bvp",
    "__version__",
]
