"""Motor de varredura das desigualdades sobre a matriz (f, p, q, n)."""

from __future__ import annotations

import hashlib
import logging
import threading
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import ClassVar

import numpy as np

from config.settings import AppConfig, get_config
from src.dyadic.functions import StepFunction
from src.errors import DomainError, PreconditionError
from src.experiments.bounds import (
    fejer_bound,
    moricz_siddiqi_bound,
    theorem1_bound,
    theorem2_bound,
    theorem3_bound,
)
from src.experiments.matrix import MatrixSpec, resolve_function
from src.experiments.rates import approximation_errors_by_p
from src.experiments.reports import BoundReport, TheoremId
from src.means.conditions import fejer_condition
from src.means.weights import WeightSequence, weight_family
from src.metrics.norms import ModulusProfile, modulus_profile

logger = logging.getLogger(__name__)


class VerificationEngine:
    """Varre células (f, p, q, n) e produz relatórios ordenados por chave.

    Cada grupo (f, q) calcula as médias de todas as ordens com FWHT em
    lote, mede todos os p e reaproveita o perfil de módulo de (f, p). Os
    grupos rodam em paralelo (WN_THREADS); o resultado não depende da ordem
    de execução.
    """

    # desigualdade → (monotonicidade exigida, descrição)
    _THEOREM_PROFILES: ClassVar[dict[TheoremId, tuple[str, str]]] = {
        TheoremId.FEJER: ("const", "Estimativa de Fejér com constante 3"),
        TheoremId.T1: ("non-decreasing", "Pesos não decrescentes, constantes 18 e 12"),
        TheoremId.T2: ("non-increasing", "Pesos não crescentes, ordens 2^n"),
        TheoremId.T3: ("non-increasing", "Pesos não crescentes, razão empírica"),
        TheoremId.MS: ("any", "Soma estrutural de Móricz-Siddiqi, razão empírica"),
    }

    def __init__(self, config: AppConfig | None = None) -> None:
        self._config = config or get_config()
        self._profiles: dict[tuple[str, str, int, float], ModulusProfile] = {}
        self._lock = threading.Lock()
        logger.info(
            "VerificationEngine inicializado com %d desigualdades e %d threads",
            len(self._THEOREM_PROFILES),
            self._config.compute.threads,
        )

    @classmethod
    def describe(cls, theorem: TheoremId) -> str:
        return cls._THEOREM_PROFILES[theorem][1]

    def profile(self, label: str, f: StepFunction, p: float) -> ModulusProfile:
        """Perfil de módulo de (f, p), calculado uma vez por conteúdo de f.

        A chave inclui um resumo dos valores de f: o mesmo rótulo com outra
        função (outra semente, por exemplo) não reaproveita o perfil antigo.
        """
        digest = hashlib.blake2b(f.values.tobytes(), digest_size=16).hexdigest()
        key = (label, digest, f.M, p)
        with self._lock:
            cached = self._profiles.get(key)
        if cached is not None:
            return cached
        value = modulus_profile(f, p)
        with self._lock:
            return self._profiles.setdefault(key, value)

    def _check_weights(self, theorem: TheoremId, q: WeightSequence, top: int) -> None:
        required = self._THEOREM_PROFILES[theorem][0]
        shape = q.monotonicity(top)
        if required == "non-decreasing" and not shape.is_non_decreasing:
            raise PreconditionError(f"{theorem.value} exige pesos não decrescentes; '{q.descriptor}' é {shape.value}")
        if required == "non-increasing" and not shape.is_non_increasing:
            raise PreconditionError(f"{theorem.value} exige pesos não crescentes; '{q.descriptor}' é {shape.value}")

    def _run_group(
        self,
        theorem: TheoremId,
        label: str,
        f: StepFunction,
        ps: Sequence[float],
        q: WeightSequence | None,
        orders: Sequence[int],
        C: float | None,
        condition: bool | None,
    ) -> list[BoundReport]:
        means_orders = [1 << e for e in orders] if theorem is TheoremId.T2 else list(orders)
        errors = approximation_errors_by_p(f, ps, means_orders, q)
        reports = []
        for p in ps:
            profile = self.profile(label, f, p)
            for n, lhs in zip(orders, errors[p], strict=True):
                value = float(lhs)
                if theorem is TheoremId.FEJER:
                    reports.append(fejer_bound(value, profile, n, label))
                elif theorem is TheoremId.T1:
                    assert q is not None
                    reports.append(theorem1_bound(value, profile, q, n, label))
                elif theorem is TheoremId.T2:
                    assert q is not None
                    reports.append(theorem2_bound(value, profile, q, n, label))
                elif theorem is TheoremId.T3:
                    assert q is not None
                    reports.append(theorem3_bound(value, profile, q, n, C, label, condition_bounded=condition))
                else:
                    assert q is not None
                    reports.append(moricz_siddiqi_bound(value, profile, q, n, C, label))
        logger.debug("%s: %d células para f=%s", theorem.value, len(reports), label)
        return reports

    def sweep(
        self,
        theorem: TheoremId,
        functions: Mapping[str, StepFunction],
        ps: Sequence[float],
        weights: Sequence[str | WeightSequence],
        orders: Sequence[int],
        C: float | None = None,
    ) -> list[BoundReport]:
        """Executa a desigualdade sobre funções x p x pesos x ordens.

        Para ``t2`` as ordens são expoentes n (ordem da média 2^n). Cada
        grupo (f, q) calcula as médias uma vez e mede todos os p.

        Raises:
            PreconditionError: Pesos fora da classe de monotonicidade exigida.
            DomainError: Ordens inadmissíveis para a resolução.
        """
        if not orders:
            raise DomainError("Faixa de ordens vazia")
        top = (1 << max(orders)) if theorem is TheoremId.T2 else max(orders)
        sequences: list[WeightSequence | None]
        if theorem is TheoremId.FEJER:
            sequences = [None]
        else:
            sequences = [weight_family(w) if isinstance(w, str) else w for w in weights]
            for q in sequences:
                assert q is not None
                self._check_weights(theorem, q, top)
        conditions: dict[int, bool | None] = {}
        for q in sequences:
            if q is not None and theorem is TheoremId.T3:
                conditions[q.uid] = fejer_condition(q, max(max(orders), 16)).bounded

        cells = list(product(functions.items(), sequences))
        logger.info(
            "Varredura %s: %d grupos x %d p x %d ordens", theorem.value, len(cells), len(ps), len(orders)
        )
        with ThreadPoolExecutor(max_workers=self._config.compute.threads) as pool:
            futures = [
                pool.submit(
                    self._run_group,
                    theorem,
                    label,
                    f,
                    ps,
                    q,
                    orders,
                    C,
                    conditions.get(q.uid) if q is not None else None,
                )
                for (label, f), q in cells
            ]
            reports = [report for future in futures for report in future.result()]
        return sorted(reports, key=lambda r: r.key)

    def run_matrix(self, matrix: MatrixSpec) -> list[BoundReport]:
        """Executa todas as desigualdades listadas na matriz."""
        functions = {spec: resolve_function(spec, matrix.resolution, matrix.seed) for spec in matrix.functions}
        reports: list[BoundReport] = []
        for theorem, cells in matrix.theorems.items():
            orders = cells.orders.exponents() if theorem is TheoremId.T2 else cells.orders.orders()
            reports.extend(self.sweep(theorem, functions, matrix.ps, cells.weights, orders))
        return sorted(reports, key=lambda r: r.key)

    @staticmethod
    def all_hold(reports: Sequence[BoundReport]) -> bool:
        """Verdadeiro se nenhuma célula aplicável falhou (holds None é ignorado)."""
        return all(report.holds is not False for report in reports)

    @staticmethod
    def summarize(reports: Sequence[BoundReport]) -> dict:
        """Resumo por desigualdade: contagens, menor margem e razão supremo."""
        summary: dict[str, dict] = {}
        for theorem in sorted({r.theorem for r in reports}, key=lambda t: t.value):
            group = [r for r in reports if r.theorem is theorem]
            ratios = [r.ratio for r in group if r.ratio is not None]
            margins = np.array([r.margin for r in group])
            summary[theorem.value] = {
                "cells": len(group),
                "holds": sum(r.holds is True for r in group),
                "fails": sum(r.holds is False for r in group),
                "unchecked": sum(r.holds is None for r in group),
                "min_margin": float(np.min(margins)),
                "sup_ratio": max(ratios) if ratios else None,
                "condition_bounded": _condition_summary(group),
            }
        return summary


def _condition_summary(group: Sequence[BoundReport]) -> dict[str, bool]:
    flags: dict[str, bool] = {}
    for report in group:
        if report.condition_bounded is not None:
            flags[report.weights] = flags.get(report.weights, True) and report.condition_bounded
    return flags
