from src.means.conditions import (
    ConditionReport,
    RegularityReport,
    dyadic_mass_check,
    fejer_condition,
    is_regular,
    moricz_siddiqi_condition,
    nondecreasing_condition,
)
from src.means.summation import (
    CesaroTable,
    MeanMethod,
    MeanResult,
    batched_norlund_means,
    convolve,
    fejer_mean,
    method_spread,
    naive_convolve,
    norlund_mean,
)
from src.means.weights import Monotonicity, WeightFamily, WeightSequence, weight_family

__all__ = [
    "CesaroTable",
    "ConditionReport",
    "MeanMethod",
    "MeanResult",
    "Monotonicity",
    "RegularityReport",
    "WeightFamily",
    "WeightSequence",
    "batched_norlund_means",
    "convolve",
    "dyadic_mass_check",
    "fejer_condition",
    "fejer_mean",
    "is_regular",
    "method_spread",
    "moricz_siddiqi_condition",
    "naive_convolve",
    "nondecreasing_condition",
    "norlund_mean",
    "weight_family",
]
