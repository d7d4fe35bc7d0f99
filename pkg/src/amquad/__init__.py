"""Error bounds for a three-point quadrature rule on (alpha, m)-convex derivatives."""

__version__ = "0.1.0"

from .errors import AmquadError, ConfigError, ConvergenceError, DomainError, EvaluationError
from .funcmodel import (
    CATALOG_IDS,
    ParamSet,
    TestFunction,
    catalog,
    get_function,
    parse_real,
    validate_params,
)
from .quadrature import quad_functional, reference_integral, true_error
from .convexity import check_am_convex, check_hadamard_hypothesis, check_path_hypothesis
from .kernels import KernelSpec, identity_residual
from .bounds import (
    BoundReport,
    bound_cor23,
    bound_report,
    bound_thm22,
    bound_thm24,
    bound_thm26,
    coeffs_thm22,
)
from .harness import CampaignConfig, load_config, run_campaign, emit_report

__all__ = [
    "__version__",
    "AmquadError", "ConfigError", "ConvergenceError", "DomainError", "EvaluationError",
    "CATALOG_IDS", "ParamSet", "TestFunction", "catalog", "get_function", "parse_real",
    "validate_params",
    "quad_functional", "reference_integral", "true_error",
    "check_am_convex", "check_hadamard_hypothesis", "check_path_hypothesis",
    "KernelSpec", "identity_residual",
    "BoundReport", "bound_cor23", "bound_report", "bound_thm22", "bound_thm24", "bound_thm26",
    "coeffs_thm22",
    "CampaignConfig", "load_config", "run_campaign", "emit_report",
]
