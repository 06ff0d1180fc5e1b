"""Médias de Fejér e de Nörlund, convolução no grupo diádico e tabela de Cesàro."""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from config.settings import get_config
from src.dyadic.functions import StepFunction, atom_indices
from src.dyadic.group import Resolution
from src.errors import DomainError, ResolutionError
from src.kernels.dirichlet import norlund_kernel, norlund_multiplier, norlund_multipliers
from src.means.weights import WeightSequence
from src.transform.walsh import Spectrum, analyze, fwht, synthesize, walsh_signs

logger = logging.getLogger(__name__)


class MeanMethod(str, Enum):
    """Caminhos de cálculo de t_n f; todos concordam a 1e-10."""

    PARTIAL_SUM = "partial-sum"
    CONVOLUTION = "convolution"
    ABEL = "abel"
    SPECTRAL = "spectral"


@dataclass(frozen=True)
class MeanResult:
    """t_n f (ou sigma_n f) com a etiqueta do método usado."""

    order: int
    resolution: Resolution
    values: StepFunction
    method: MeanMethod


def _check_order(f: StepFunction, n: int) -> None:
    if not 1 <= n <= f.size:
        raise DomainError(f"Ordem n={n} fora de [1, 2^{f.M}]")


def convolve(f: StepFunction, g: StepFunction) -> StepFunction:
    """(f * g)(x) = int f(t) g(x + t) dmu(t), via produto dos espectros."""
    if f.resolution != g.resolution:
        raise ResolutionError(f"Resoluções incompatíveis: M={f.M} e M={g.M}")
    product = analyze(f).coefficients * analyze(g).coefficients
    return synthesize(Spectrum(f.resolution, product))


def naive_convolve(f: StepFunction, g: StepFunction) -> StepFunction:
    """Oráculo O(4^M): result[j] = 2^{-M} sum_i f[i] g[j XOR i]."""
    if f.resolution != g.resolution:
        raise ResolutionError(f"Resoluções incompatíveis: M={f.M} e M={g.M}")
    indices = atom_indices(f.resolution)
    values = np.array([np.dot(f.values, g.values[indices ^ j]) for j in range(f.size)])
    return StepFunction(f.resolution, values / f.size)


def fejer_mean(f: StepFunction, n: int) -> StepFunction:
    """sigma_n f = (1/n) sum_{k=1}^n S_k f = sum_{k<n} (1 - k/n) f^(k) w_k."""
    _check_order(f, n)
    multiplier = np.zeros(f.size)
    multiplier[:n] = (n - np.arange(n, dtype=np.float64)) / n
    return synthesize(Spectrum(f.resolution, analyze(f).coefficients * multiplier))


class CesaroTable:
    """Somas acumuladas A_j = j sigma_j f = sum_{k<=j} S_k f, j = 1..n_max, em cache.

    A tabela é construída uma vez (O(n_max 2^M)) e reutilizada pelo método
    de Abel para qualquer ordem n <= n_max. Leitura segura entre threads.

    Raises:
        DomainError: Se n_max x 2^M exceder ``ComputeConfig.cesaro_cache_limit``.
    """

    def __init__(self, f: StepFunction, n_max: int) -> None:
        _check_order(f, n_max)
        limit = get_config().compute.cesaro_cache_limit
        if n_max * f.size > limit:
            raise DomainError(f"Tabela de Cesàro com {n_max} x {f.size} elementos excede o limite {limit}")
        self.function = f
        self.n_max = n_max
        self._table: NDArray[np.float64] | None = None
        self._lock = threading.Lock()

    def _build(self) -> NDArray[np.float64]:
        f = self.function
        spectrum = analyze(f).coefficients[: self.n_max]
        indices = atom_indices(f.resolution)
        walsh = np.array([walsh_signs(k, indices) for k in range(self.n_max)])
        partial = np.cumsum(spectrum[:, None] * walsh, axis=0)
        table = np.cumsum(partial, axis=0)
        table.setflags(write=False)
        logger.debug("Tabela de Cesàro construída: %d x %d", self.n_max, f.size)
        return table

    @property
    def table(self) -> NDArray[np.float64]:
        if self._table is None:
            with self._lock:
                if self._table is None:
                    self._table = self._build()
        return self._table

    def fejer(self, j: int) -> StepFunction:
        """sigma_j f lido da tabela."""
        if not 1 <= j <= self.n_max:
            raise DomainError(f"Ordem j={j} fora de [1, {self.n_max}]")
        return StepFunction(self.function.resolution, self.table[j - 1] / j)


def _abel_coefficients(q: WeightSequence, n: int) -> NDArray[np.float64]:
    """c_j = q_{n-j} - q_{n-j-1} (j < n) e c_n = q_0, para sum_j c_j A_j."""
    weights = q.values(n)
    coefficients = np.empty(n)
    j = np.arange(1, n)
    coefficients[: n - 1] = weights[n - j] - weights[n - j - 1]
    coefficients[n - 1] = weights[0]
    return coefficients


def _partial_sum_mean(f: StepFunction, n: int, q: WeightSequence) -> NDArray[np.float64]:
    spectrum = analyze(f).coefficients
    weights = q.values(n)
    indices = atom_indices(f.resolution)
    current = np.zeros(f.size)
    total = np.zeros(f.size)
    for k in range(1, n + 1):
        if spectrum[k - 1] != 0.0:
            current += spectrum[k - 1] * walsh_signs(k - 1, indices)
        total += weights[n - k] * current
    return total / q.Q(n)


def _abel_mean(f: StepFunction, n: int, q: WeightSequence, cache: CesaroTable | None) -> NDArray[np.float64]:
    coefficients = _abel_coefficients(q, n)
    if cache is not None and cache.function is f and n <= cache.n_max:
        return np.asarray(coefficients @ cache.table[:n]) / q.Q(n)
    spectrum = analyze(f).coefficients
    indices = atom_indices(f.resolution)
    current = np.zeros(f.size)
    running = np.zeros(f.size)
    total = np.zeros(f.size)
    for j in range(1, n + 1):
        if spectrum[j - 1] != 0.0:
            current += spectrum[j - 1] * walsh_signs(j - 1, indices)
        running += current
        total += coefficients[j - 1] * running
    return total / q.Q(n)


def norlund_mean(
    f: StepFunction,
    n: int,
    q: WeightSequence,
    method: MeanMethod = MeanMethod.CONVOLUTION,
    cache: CesaroTable | None = None,
) -> MeanResult:
    """n-ésima média de Nörlund t_n f = (1/Q_n) sum_{k=1}^n q_{n-k} S_k f.

    Args:
        f: Função escada.
        n: Ordem, 1 <= n <= 2^M.
        q: Pesos de Nörlund.
        method: partial-sum, convolution (f * F_n), abel (via sigma_j) ou spectral.
        cache: Tabela de Cesàro reutilizada pelo método de Abel.

    Raises:
        DomainError: Se n > 2^M.
    """
    _check_order(f, n)
    if method is MeanMethod.PARTIAL_SUM:
        values = StepFunction(f.resolution, _partial_sum_mean(f, n, q))
    elif method is MeanMethod.CONVOLUTION:
        values = convolve(f, norlund_kernel(q, n, f.resolution))
    elif method is MeanMethod.ABEL:
        values = StepFunction(f.resolution, _abel_mean(f, n, q, cache))
    else:
        multiplier = norlund_multiplier(q, n, f.size)
        values = synthesize(Spectrum(f.resolution, analyze(f).coefficients * multiplier))
    return MeanResult(order=n, resolution=f.resolution, values=values, method=method)


def method_spread(f: StepFunction, n: int, q: WeightSequence, cache: CesaroTable | None = None) -> float:
    """Maior desvio absoluto entre os caminhos de cálculo de t_n f.

    O comando ``mean --check`` compara o valor com ``ToleranceConfig.agreement``.
    """
    results = [norlund_mean(f, n, q, method, cache).values.values for method in MeanMethod]
    return max(float(np.max(np.abs(other - results[0]))) for other in results[1:])


def batched_norlund_means(
    coefficients: NDArray[np.float64], orders: list[int], q: WeightSequence
) -> NDArray[np.float64]:
    """Linhas t_n f para várias ordens a partir do espectro de f (uma FWHT em lote)."""
    multipliers = norlund_multipliers(q, orders, coefficients.shape[-1])
    multipliers *= coefficients[None, :]
    return fwht(multipliers)
