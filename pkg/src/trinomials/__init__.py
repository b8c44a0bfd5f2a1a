"""Roots, Mahler measures and asymptotic limits of x^n - a x^k - 1."""

from .analysis import (
    AnalysisReport,
    analyze,
    check_equispacing,
    check_monotone_modulus,
    count_outside_unit,
    erdos_turan_check,
    exceptional_root,
    house,
    limacon_curve,
    mahler_measure,
)
from .errors import ConvergenceError, DomainError, NumericalError, ValidationError
from .limits import (
    LimitReport,
    clausen,
    limit_report,
    measure_limit_extended,
    measure_limit_maillot,
    measure_limit_quadrature,
    rate_limit,
)
from .poly_solver import (
    Polynomial,
    RealBrackets,
    RootSet,
    SolverConfig,
    TrinomialSpec,
    bracket_alpha,
    bracket_beta,
    bracket_gamma,
    real_brackets,
    solve,
    verify_polar_residuals,
)

__version__ = "0.1.0"
