from src.dyadic.functions import StepFunction, atom_indices, integrate, translate
from src.dyadic.group import (
    DyadicInterval,
    GroupElement,
    Resolution,
    as_resolution,
    group_add,
    interval_contains,
    interval_measure,
    interval_of,
    unit_vector,
)

__all__ = [
    "DyadicInterval",
    "GroupElement",
    "Resolution",
    "StepFunction",
    "as_resolution",
    "atom_indices",
    "group_add",
    "integrate",
    "interval_contains",
    "interval_measure",
    "interval_of",
    "translate",
    "unit_vector",
]
