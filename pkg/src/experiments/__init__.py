from src.experiments.bounds import (
    approximation_error,
    fejer_bound,
    moricz_siddiqi_bound,
    theorem1_bound,
    theorem2_bound,
    theorem3_bound,
    verify_fejer_estimate,
    verify_moricz_siddiqi,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from src.experiments.engine import VerificationEngine
from src.experiments.matrix import MatrixSpec, OrderRange, TheoremCells, load_matrix, resolve_function
from src.experiments.rates import (
    approximation_errors,
    approximation_errors_by_p,
    convergence_check,
    fejer_boundedness,
    mean_rows,
    rate_experiment,
    saturation_check,
)
from src.experiments.reports import (
    BOUND_COLUMNS,
    BoundednessReport,
    BoundReport,
    ConvergenceReport,
    RateReport,
    SaturationReport,
    TheoremId,
)

__all__ = [
    "BOUND_COLUMNS",
    "BoundReport",
    "BoundednessReport",
    "ConvergenceReport",
    "MatrixSpec",
    "OrderRange",
    "RateReport",
    "SaturationReport",
    "TheoremCells",
    "TheoremId",
    "VerificationEngine",
    "approximation_error",
    "approximation_errors",
    "approximation_errors_by_p",
    "convergence_check",
    "fejer_bound",
    "fejer_boundedness",
    "load_matrix",
    "mean_rows",
    "moricz_siddiqi_bound",
    "rate_experiment",
    "resolve_function",
    "saturation_check",
    "theorem1_bound",
    "theorem2_bound",
    "theorem3_bound",
    "verify_fejer_estimate",
    "verify_moricz_siddiqi",
    "verify_theorem1",
    "verify_theorem2",
    "verify_theorem3",
]
