"""Geradores da classe lip(alpha, p), ajuste de taxas e evidência de crescimento."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config.settings import get_config
from src.dyadic.functions import StepFunction, atom_indices
from src.dyadic.group import Resolution, as_resolution
from src.errors import DegenerateDataError, DomainError
from src.metrics.norms import ModulusProfile

logger = logging.getLogger(__name__)


class LipVariant(str, Enum):
    LACUNARY = "lacunary"
    RANDOM = "random"


@dataclass(frozen=True)
class FitResult:
    """Mínimos quadrados de log2(y) contra log2(x)."""

    slope: float
    intercept: float
    r2: float


@dataclass(frozen=True)
class GrowthEvidence:
    """Inclinação log-log do supremo acumulado na parte alta do horizonte."""

    slope: float
    threshold: float
    bounded: bool


def lip_generator(
    alpha: float,
    M: Resolution | int,
    variant: LipVariant | str = LipVariant.LACUNARY,
    seed: int = 0,
) -> StepFunction:
    """f = sum_{m<M} 2^{-alpha m} eps_m w_{2^m}.

    eps_m = 1 (lacunar) ou sinais de numpy.random.default_rng(seed) (PCG64).
    """
    if not alpha > 0:
        raise DomainError(f"alpha deve ser > 0, recebido {alpha}")
    res = as_resolution(M)
    kind = LipVariant(variant)
    if kind is LipVariant.RANDOM:
        signs = np.random.default_rng(seed).choice(np.array([-1.0, 1.0]), size=res.M)
    else:
        signs = np.ones(res.M)
    indices = atom_indices(res)
    values = np.zeros(res.size)
    for m in range(res.M):
        rademacher = 1.0 - 2.0 * ((indices >> m) & 1)
        values += signs[m] * 2.0 ** (-alpha * m) * rademacher
    return StepFunction(res, values)


def rate_fit(xs: ArrayLike, ys: ArrayLike) -> FitResult:
    """Ajuste linear de log2(ys) em log2(xs) com coeficiente r^2.

    Raises:
        DegenerateDataError: Menos de 3 pontos.
        DomainError: Algum y (ou x) não positivo.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.size != y.size:
        raise DomainError(f"Tamanhos incompatíveis: {x.size} e {y.size}")
    if x.size < 3:
        raise DegenerateDataError(f"Ajuste requer >= 3 pontos, recebidos {x.size}")
    if np.any(y <= 0) or np.any(x <= 0):
        raise DomainError("Ajuste log-log requer valores positivos")
    lx, ly = np.log2(x), np.log2(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = ly - (slope * lx + intercept)
    total = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if total == 0.0 else 1.0 - float(np.sum(residual**2)) / total
    return FitResult(slope=float(slope), intercept=float(intercept), r2=r2)


def lip_bounds(profile: ModulusProfile, alpha: float, k_max: int | None = None) -> tuple[float, float]:
    """Constantes (c, C) com c 2^{-alpha k} <= omega_k <= C 2^{-alpha k}, k <= k_max (padrão M-2)."""
    top = profile.M - 2 if k_max is None else k_max
    if top < 0:
        raise DegenerateDataError(f"Sem escalas para ajustar em M={profile.M}")
    ks = np.arange(top + 1)
    scaled = profile.omegas[: top + 1] * np.exp2(alpha * ks)
    return float(np.min(scaled)), float(np.max(scaled))


def growth_evidence(ns: ArrayLike, values: ArrayLike, threshold: float | None = None) -> GrowthEvidence:
    """Evidência de limitação de sup_{m<=n} c_m.

    Ajusta a inclinação log-log do supremo acumulado sobre n >= horizonte/16;
    "limitado" se a inclinação não excede o limiar (padrão 0.1).
    """
    limit = get_config().experiment.growth_threshold if threshold is None else threshold
    n = np.asarray(ns, dtype=np.float64)
    running = np.maximum.accumulate(np.asarray(values, dtype=np.float64))
    upper = n >= n[-1] / 16
    if np.count_nonzero(upper) < 3:
        upper = np.ones_like(n, dtype=bool)
    xs, ys = n[upper], running[upper]
    if np.all(ys <= 0):
        return GrowthEvidence(slope=0.0, threshold=limit, bounded=True)
    positive = ys > 0
    if np.count_nonzero(positive) < 3:
        return GrowthEvidence(slope=0.0, threshold=limit, bounded=True)
    slope = rate_fit(xs[positive], ys[positive]).slope
    return GrowthEvidence(slope=slope, threshold=limit, bounded=slope <= limit)
