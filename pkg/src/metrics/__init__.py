from src.metrics.lipschitz import (
    FitResult,
    GrowthEvidence,
    LipVariant,
    growth_evidence,
    lip_bounds,
    lip_generator,
    rate_fit,
)
from src.metrics.norms import (
    ModulusMethod,
    ModulusProfile,
    lp_norm,
    modulus,
    modulus_profile,
    norms_of_rows,
    translation_distances,
)

__all__ = [
    "FitResult",
    "GrowthEvidence",
    "LipVariant",
    "ModulusMethod",
    "ModulusProfile",
    "growth_evidence",
    "lip_bounds",
    "lip_generator",
    "lp_norm",
    "modulus",
    "modulus_profile",
    "norms_of_rows",
    "rate_fit",
    "translation_distances",
]
