from src.transform.walsh import (
    Spectrum,
    analyze,
    fwht,
    naive_analyze,
    partial_sum,
    rademacher,
    synthesize,
    walsh_function,
    walsh_signs,
)

__all__ = [
    "Spectrum",
    "analyze",
    "fwht",
    "naive_analyze",
    "partial_sum",
    "rademacher",
    "synthesize",
    "walsh_function",
    "walsh_signs",
]
