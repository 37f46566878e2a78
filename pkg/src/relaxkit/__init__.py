"""relaxkit: non-Debye relaxation models and their memory-kernel calculus.

Spectral functions and Laplace-domain quantities live in ``models``,
closed-form time-domain responses and Sonine kernel pairs in
``timedomain``, the numerical Laplace bridge in ``laplace``, property
checkers in ``analysis``, evolution-equation solvers and fractional
operators in ``evolution``, and the command-line surface in ``cli``.
"""

from .errors import ConvergenceError, NumericalError, RelaxkitError
from .mlf import Ml2Params, Ml3Params, ml3, ml3_deriv, ml_binom, prabhakar
from .models import (
    ModelKind,
    RelaxationModel,
    UrlExponents,
    complex_permittivity,
    levy_exponent,
    levy_exponent_dual,
    memory_M_hat,
    memory_k_hat,
    one_minus_spectral,
    spectral,
    url_exponents,
)
from .timedomain import GeneralizedFunction, Grid, kernel_M, kernel_k, relaxation, response
from .laplace import InvertMethod, TransformSettings, forward, invert
from .analysis import (
    PropertyKind,
    PropertyReport,
    check_cbf,
    check_cmf,
    check_response_relaxation,
    check_stieltjes,
    sonine_residual,
    url_slope,
)
from .evolution import (
    Scheme,
    Solution,
    SolverSettings,
    ew_equation_residual,
    frac_deriv_caputo,
    frac_deriv_rl,
    frac_integral,
    jws_convolution_identity,
    solve_integral_eq,
    solve_integrodiff_eq,
    verify_equivalence,
)
from .fitting import FitResult, fit_permittivity

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "FitResult",
    "GeneralizedFunction",
    "Grid",
    "InvertMethod",
    "Ml2Params",
    "Ml3Params",
    "ModelKind",
    "NumericalError",
    "PropertyKind",
    "PropertyReport",
    "RelaxationModel",
    "RelaxkitError",
    "Scheme",
    "Solution",
    "SolverSettings",
    "TransformSettings",
    "UrlExponents",
    "check_cbf",
    "check_cmf",
    "check_response_relaxation",
    "check_stieltjes",
    "complex_permittivity",
    "ew_equation_residual",
    "fit_permittivity",
    "forward",
    "frac_deriv_caputo",
    "frac_deriv_rl",
    "frac_integral",
    "invert",
    "jws_convolution_identity",
    "kernel_M",
    "kernel_k",
    "levy_exponent",
    "levy_exponent_dual",
    "memory_M_hat",
    "memory_k_hat",
    "ml3",
    "ml3_deriv",
    "ml_binom",
    "one_minus_spectral",
    "prabhakar",
    "relaxation",
    "response",
    "solve_integral_eq",
    "solve_integrodiff_eq",
    "sonine_residual",
    "spectral",
    "url_exponents",
    "url_slope",
    "verify_equivalence",
]
