"""Arbitrary-precision Lerch zeta functions and their functional equations.

The package evaluates the Lerch zeta function zeta(s, a, c), its symmetric
combinations L^{±} and their completions, the twisted-periodic extension
zeta_* to all real (a, c), renormalized boundary-continuous variants, test
function zeta integrals, and the Hermite-Gaussian (oscillator) family of
generalized completed functions, together with verification suites for
every functional equation and limit formula they satisfy.
"""

from .boundary import (
    BoundaryTarget,
    CaseOutOfRange,
    IntegerSRejected,
    boundary_limit_probe,
    completed_correction,
    continuity_classifier,
    correction,
    lhat_renorm,
    lp_diagnostic,
    renorm_l,
)
from .hermite import (
    IntPolynomial,
    RootIsolationFailure,
    hermite_gaussian,
    lhat_n,
    lhat_n_quadrature,
    mellin_difference_check,
    mp_inner_product,
    poly_family,
    poly_zeros,
)
from .lerch import (
    LerchPoint,
    PoleEncountered,
    ReductionRecord,
    dirichlet_zeta_star,
    hurwitz,
    lerch_transform_check,
    lhat_star,
    lpm_star,
    periodic_zeta,
    reduce_fundamental,
    zeta_star,
)
from .numerics import (
    ConvergenceFailure,
    PoleAtNonpositiveInteger,
    PoleOrZero,
    complex_gamma,
    tate_gamma,
    upper_incomplete_gamma,
)
from .precision import DomainError, EvalResult, PoleInfo, PrecisionContext
from .quadrature import QuadratureNonconvergent, QuadratureSpec
from .zeta_integrals import (
    TestFunction,
    averaged_kernel,
    f_k,
    fe_residual_general,
    periodicity_residuals,
    phi_integral,
    register,
)

__all__ = [
    "BoundaryTarget", "CaseOutOfRange", "ConvergenceFailure", "DomainError",
    "EvalResult", "IntPolynomial", "IntegerSRejected", "LerchPoint",
    "PoleAtNonpositiveInteger", "PoleEncountered", "PoleInfo", "PoleOrZero",
    "PrecisionContext", "QuadratureNonconvergent", "QuadratureSpec",
    "ReductionRecord", "RootIsolationFailure", "TestFunction",
    "averaged_kernel", "boundary_limit_probe", "completed_correction",
    "complex_gamma", "continuity_classifier", "correction",
    "dirichlet_zeta_star", "f_k", "fe_residual_general", "hermite_gaussian",
    "hurwitz", "lerch_transform_check", "lhat_n", "lhat_n_quadrature",
    "lhat_renorm", "lhat_star", "lp_diagnostic", "lpm_star",
    "mellin_difference_check", "mp_inner_product", "periodic_zeta",
    "periodicity_residuals", "phi_integral", "poly_family", "poly_zeros",
    "reduce_fundamental", "register", "renorm_l", "tate_gamma",
    "upper_incomplete_gamma", "zeta_star",
]

__version__ = "0.1.0"
