"""Evidência em horizonte finito para as hipóteses sobre os pesos.

Regularidade, condição de Móricz-Siddiqi, 1/Q_n = O(1/n) e
q_{n-1}/Q_n = O(1/n). Limites não são verificáveis por máquina: cada
relatório traz o horizonte usado e um veredito por limiar configurável.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from config.settings import get_config
from src.errors import DomainError
from src.means.weights import WeightSequence
from src.metrics.lipschitz import GrowthEvidence, growth_evidence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegularityReport:
    """Razões q_{n-1}/Q_n para n <= N e veredito de regularidade aparente."""

    weights: str
    horizon: int
    ratios: NDArray[np.float64]
    threshold: float
    tail_ratio: float
    eventually_decreasing: bool
    partial_sums_diverge: bool
    regular: bool

    def to_dict(self) -> dict:
        return {
            "weights": self.weights,
            "horizon": self.horizon,
            "threshold": self.threshold,
            "tail_ratio": self.tail_ratio,
            "eventually_decreasing": self.eventually_decreasing,
            "partial_sums_diverge": self.partial_sums_diverge,
            "regular": self.regular,
        }


@dataclass(frozen=True)
class ConditionReport:
    """Sequência c_n de uma condição assintótica e evidência de limitação."""

    name: str
    weights: str
    horizon: int
    values: NDArray[np.float64]
    sup: float
    evidence: GrowthEvidence

    @property
    def bounded(self) -> bool:
        return self.evidence.bounded

    def to_dict(self) -> dict:
        return {
            "condition": self.name,
            "weights": self.weights,
            "horizon": self.horizon,
            "sup": self.sup,
            "growth_slope": self.evidence.slope,
            "bounded": self.bounded,
        }


def is_regular(q: WeightSequence, horizon: int, threshold: float | None = None) -> RegularityReport:
    """Regularidade aparente: razão final abaixo do limiar e cauda decrescente."""
    if horizon < 2:
        raise DomainError(f"Horizonte deve ser >= 2, recebido {horizon}")
    limit = get_config().experiment.regularity_threshold if threshold is None else threshold
    weights = q.values(horizon)
    prefix = q.prefix_sums(horizon)
    ns = np.arange(1, horizon + 1)
    ratios = weights[ns - 1] / prefix[ns]
    tail = ratios[-max(2, horizon // 10) :]
    decreasing = bool(np.all(np.diff(tail) <= 1e-15 * tail[:-1]))
    tail_ratio = float(ratios[-1])
    diverge = bool(prefix[horizon] > 1.5 * prefix[max(1, horizon // 2)])
    regular = tail_ratio < limit and decreasing
    logger.debug("Regularidade de '%s' até N=%d: razão final %.3g", q.descriptor, horizon, tail_ratio)
    return RegularityReport(
        weights=q.descriptor,
        horizon=horizon,
        ratios=ratios,
        threshold=limit,
        tail_ratio=tail_ratio,
        eventually_decreasing=decreasing,
        partial_sums_diverge=diverge,
        regular=regular,
    )


def _condition(name: str, q: WeightSequence, values: NDArray[np.float64], threshold: float | None) -> ConditionReport:
    ns = np.arange(1, values.size + 1)
    evidence = growth_evidence(ns, values, threshold=threshold)
    return ConditionReport(
        name=name,
        weights=q.descriptor,
        horizon=int(values.size),
        values=values,
        sup=float(np.max(values)),
        evidence=evidence,
    )


def moricz_siddiqi_condition(
    q: WeightSequence, gamma: float, horizon: int, threshold: float | None = None
) -> ConditionReport:
    """c_n = n^{gamma-1} / Q_n^gamma * sum_{k<n} q_k^gamma, 1 < gamma <= 2.

    Somas acumuladas em escala logarítmica: pesos de crescimento
    exponencial não estouram.
    """
    if not 1 < gamma <= 2:
        raise DomainError(f"gamma deve estar em (1, 2], recebido {gamma}")
    if horizon < 1:
        raise DomainError(f"Horizonte deve ser >= 1, recebido {horizon}")
    with np.errstate(divide="ignore"):
        log_weights = np.log(q.values(horizon))
    log_moment = np.logaddexp.accumulate(gamma * log_weights)
    log_mass = np.logaddexp.accumulate(log_weights)
    ns = np.arange(1, horizon + 1, dtype=np.float64)
    values = np.exp((gamma - 1) * np.log(ns) + log_moment - gamma * log_mass)
    return _condition(f"moricz-siddiqi(gamma={gamma:g})", q, values, threshold)


def fejer_condition(q: WeightSequence, horizon: int, threshold: float | None = None) -> ConditionReport:
    """n / Q_n (condição 1/Q_n = O(1/n))."""
    prefix = q.prefix_sums(horizon)
    ns = np.arange(1, horizon + 1, dtype=np.float64)
    return _condition("n/Q_n", q, ns / prefix[1:], threshold)


def nondecreasing_condition(q: WeightSequence, horizon: int, threshold: float | None = None) -> ConditionReport:
    """n q_{n-1} / Q_n (condição q_{n-1}/Q_n = O(1/n))."""
    weights = q.values(horizon)
    prefix = q.prefix_sums(horizon)
    ns = np.arange(1, horizon + 1, dtype=np.float64)
    return _condition("n*q_{n-1}/Q_n", q, ns * weights / prefix[1:], threshold)


def dyadic_mass_check(q: WeightSequence, exponent_max: int) -> bool:
    """2^n q_{2^n - 1} <= Q_{2^n} para n <= exponent_max (válido se q não cresce)."""
    prefix = q.prefix_sums(1 << exponent_max)
    for n in range(exponent_max + 1):
        order = 1 << n
        if order * q.q(order - 1) > prefix[order] * (1 + 1e-12):
            return False
    return True
