"""Núcleos de Dirichlet, Fejér e Nörlund e suas formas fechadas."""

from __future__ import annotations

import logging
import threading
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from config.settings import get_config
from src.dyadic.functions import StepFunction, atom_indices
from src.dyadic.group import Resolution, as_resolution
from src.errors import DomainError
from src.transform.walsh import fwht, walsh_signs

if TYPE_CHECKING:
    from src.means.weights import WeightSequence

logger = logging.getLogger(__name__)


class KernelKind(str, Enum):
    DIRICHLET = "dirichlet"
    FEJER = "fejer"
    NORLUND = "norlund"


class KernelMethod(str, Enum):
    """Caminho de cálculo: espectral O(M 2^M) ou soma cumulativa O(n 2^M)."""

    SPECTRAL = "spectral"
    DIRECT = "direct"


@dataclass(frozen=True)
class KernelSpec:
    """Especificação de um núcleo: tipo, ordem e (para Nörlund) os pesos."""

    kind: KernelKind
    order: int
    weights: WeightSequence | None = None

    def __post_init__(self) -> None:
        if self.order < 1:
            raise DomainError(f"Ordem do núcleo deve ser >= 1, recebido {self.order}")
        if self.kind is KernelKind.NORLUND and self.weights is None:
            raise DomainError("Núcleo de Nörlund requer sequência de pesos")


def highest_bit(n: int) -> int:
    """|n| := max{j : n_j != 0}."""
    if n < 1:
        raise DomainError(f"highest_bit exige n >= 1, recebido {n}")
    return n.bit_length() - 1


def _check_order(n: int, res: Resolution) -> None:
    if not 1 <= n <= res.size:
        raise DomainError(f"Ordem n={n} fora de [1, 2^{res.M}]")


def norlund_multiplier(q: WeightSequence, n: int, size: int) -> NDArray[np.float64]:
    """Espectro de F_n: Q_{n-k}/Q_n para k < n, zero a partir de n."""
    return norlund_mass(q, n, size) / q.Q(n)


def norlund_multipliers(q: WeightSequence, orders: Sequence[int], size: int) -> NDArray[np.float64]:
    """Uma linha de ``norlund_multiplier`` por ordem, montada sem laço Python."""
    ns = np.asarray(orders, dtype=np.int64)
    if ns.size == 0:
        return np.empty((0, size))
    if ns.min() < 1 or ns.max() > size:
        raise DomainError(f"Ordens fora de [1, {size}]")
    prefix = q.prefix_sums(int(ns.max()))
    gap = ns[:, None] - np.arange(size)[None, :]
    mass = np.where(gap > 0, prefix[np.clip(gap, 0, None)], 0.0)
    return mass / prefix[ns][:, None]


def norlund_mass(q: WeightSequence, n: int, size: int) -> NDArray[np.float64]:
    """Espectro de Q_n F_n: Q_{n-k} para k < n."""
    if not 1 <= n <= size:
        raise DomainError(f"Ordem n={n} fora de [1, {size}]")
    prefix = q.prefix_sums(n)
    mass = np.zeros(size)
    mass[:n] = prefix[n - np.arange(n)]
    return mass


# ─── Caminho espectral ──────────────────────────────────────
def _spectral_dirichlet(n: int, res: Resolution) -> NDArray[np.float64]:
    spectrum = np.zeros(res.size)
    spectrum[:n] = 1.0
    return fwht(spectrum)


def _spectral_fejer(n: int, res: Resolution) -> NDArray[np.float64]:
    # n K_n tem espectro inteiro (n - k), sintetizado sem arredondamento
    spectrum = np.zeros(res.size)
    spectrum[:n] = n - np.arange(n, dtype=np.float64)
    return fwht(spectrum) / n


def _spectral_norlund(q: WeightSequence, n: int, res: Resolution) -> NDArray[np.float64]:
    return fwht(norlund_mass(q, n, res.size)) / q.Q(n)


# ─── Caminho direto (somas cumulativas de Dirichlet) ────────
def iter_dirichlet_kernels(M: Resolution | int, n_max: int) -> Iterator[tuple[int, NDArray[np.float64]]]:
    """Gera (n, D_n) para n = 0..n_max, com D_0 = 0 e D_{n+1} = D_n + w_n."""
    res = as_resolution(M)
    if not 0 <= n_max <= res.size:
        raise DomainError(f"n_max={n_max} fora de [0, 2^{res.M}]")
    indices = atom_indices(res)
    current = np.zeros(res.size)
    yield 0, current.copy()
    for n in range(1, n_max + 1):
        current += walsh_signs(n - 1, indices)
        yield n, current.copy()


def iter_fejer_kernels(M: Resolution | int, n_max: int) -> Iterator[tuple[int, NDArray[np.float64]]]:
    """Gera (n, K_n) para n = 1..n_max a partir da soma cumulativa de D_k."""
    res = as_resolution(M)
    if not 1 <= n_max <= res.size:
        raise DomainError(f"n_max={n_max} fora de [1, 2^{res.M}]")
    indices = atom_indices(res)
    dirichlet = np.zeros(res.size)
    cumulative = np.zeros(res.size)
    for n in range(1, n_max + 1):
        dirichlet += walsh_signs(n - 1, indices)
        cumulative += dirichlet
        yield n, cumulative / n


def _direct_kernel(kind: KernelKind, n: int, res: Resolution, q: WeightSequence | None) -> NDArray[np.float64]:
    if kind is KernelKind.DIRICHLET:
        return deque(iter_dirichlet_kernels(res, n), maxlen=1)[0][1]
    if kind is KernelKind.FEJER:
        return deque(iter_fejer_kernels(res, n), maxlen=1)[0][1]
    assert q is not None
    weights = q.values(n)
    total = np.zeros(res.size)
    for k, dirichlet in iter_dirichlet_kernels(res, n):
        if k >= 1:
            total += weights[n - k] * dirichlet
    return total / q.Q(n)


# ─── Cache de tabelas ───────────────────────────────────────
class KernelCache:
    """Cache de núcleos protegido por lock, chaveado por (tipo, n, M, pesos, método).

    Limitado por quantidade de entradas e por bytes (``kernel_cache_bytes``);
    a entrada mais antiga sai primeiro. Núcleos maiores que o orçamento
    inteiro são devolvidos sem cache. Valores devolvidos são somente
    leitura, idênticos ao recálculo.
    """

    def __init__(self, max_entries: int = 256, max_bytes: int | None = None) -> None:
        self._entries: dict[tuple[str, int, int, int, str], StepFunction] = {}
        self._max_entries = max_entries
        self._max_bytes = get_config().compute.kernel_cache_bytes if max_bytes is None else max_bytes
        self._bytes = 0
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @property
    def nbytes(self) -> int:
        return self._bytes

    def get(self, spec: KernelSpec, M: Resolution | int, method: KernelMethod) -> StepFunction:
        res = as_resolution(M)
        key = (spec.kind.value, spec.order, res.M, spec.weights.uid if spec.weights else 0, method.value)
        with self._lock:
            cached = self._entries.get(key)
            if cached is not None:
                self.hits += 1
                return cached
        value = _compute_kernel(spec, res, method)
        size = value.values.nbytes
        with self._lock:
            self.misses += 1
            if key in self._entries:
                return self._entries[key]
            if size > self._max_bytes:
                logger.debug("Núcleo %s n=%d M=%d excede o orçamento do cache", spec.kind.value, spec.order, res.M)
                return value
            while self._entries and (
                len(self._entries) >= self._max_entries or self._bytes + size > self._max_bytes
            ):
                evicted = self._entries.pop(next(iter(self._entries)))
                self._bytes -= evicted.values.nbytes
            self._entries[key] = value
            self._bytes += size
            logger.debug("Núcleo %s n=%d M=%d calculado (%s)", spec.kind.value, spec.order, res.M, method.value)
            return value

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self._bytes = 0


def _compute_kernel(spec: KernelSpec, res: Resolution, method: KernelMethod) -> StepFunction:
    _check_order(spec.order, res)
    if method is KernelMethod.DIRECT:
        return StepFunction(res, _direct_kernel(spec.kind, spec.order, res, spec.weights))
    if spec.kind is KernelKind.DIRICHLET:
        values = _spectral_dirichlet(spec.order, res)
    elif spec.kind is KernelKind.FEJER:
        values = _spectral_fejer(spec.order, res)
    else:
        assert spec.weights is not None
        values = _spectral_norlund(spec.weights, spec.order, res)
    return StepFunction(res, values)


_DEFAULT_CACHE = KernelCache()


def kernel(
    spec: KernelSpec,
    M: Resolution | int,
    method: KernelMethod = KernelMethod.SPECTRAL,
    cache: KernelCache | None = _DEFAULT_CACHE,
) -> StepFunction:
    """Realiza o núcleo descrito por ``spec`` na resolução M."""
    if cache is None:
        return _compute_kernel(spec, as_resolution(M), method)
    return cache.get(spec, M, method)


def dirichlet_kernel(n: int, M: Resolution | int, method: KernelMethod = KernelMethod.SPECTRAL) -> StepFunction:
    """D_n = sum_{k<n} w_k; para n = 2^m vale 2^m em I_m e 0 fora."""
    return kernel(KernelSpec(KernelKind.DIRICHLET, n), M, method)


def fejer_kernel(n: int, M: Resolution | int, method: KernelMethod = KernelMethod.SPECTRAL) -> StepFunction:
    """K_n = (1/n) sum_{k=1}^n D_k."""
    return kernel(KernelSpec(KernelKind.FEJER, n), M, method)


def norlund_kernel(
    q: WeightSequence, n: int, M: Resolution | int, method: KernelMethod = KernelMethod.SPECTRAL
) -> StepFunction:
    """F_n = (1/Q_n) sum_{k=1}^n q_{n-k} D_k."""
    return kernel(KernelSpec(KernelKind.NORLUND, n, q), M, method)


def fejer_closed_form(m: int, M: Resolution | int) -> StepFunction:
    """Forma fechada de K_{2^m}.

    (2^m + 1)/2 em I_m; 2^{t-1} em {x in I_t \\ I_{t+1} : x - e_t in I_m}
    para t < m; zero no restante.
    """
    res = as_resolution(M)
    if not 0 <= m <= res.M:
        raise DomainError(f"Expoente m={m} fora de [0, {res.M}]")
    residues = atom_indices(res) & ((1 << m) - 1)
    values = np.zeros(res.size)
    values[residues == 0] = ((1 << m) + 1) / 2
    for t in range(m):
        values[residues == (1 << t)] = 2.0 ** (t - 1)
    return StepFunction(res, values)


def norlund_kernel_dyadic(q: WeightSequence, n: int, M: Resolution | int) -> StepFunction:
    """F_{2^n} = D_{2^n} - (1/Q_{2^n}) sum_{k<2^n} q_k w_{2^n - 1} D_k.

    Terceiro caminho, independente, para ordens diádicas.
    """
    res = as_resolution(M)
    if not 0 <= n <= res.M:
        raise DomainError(f"Expoente n={n} fora de [0, {res.M}]")
    order = 1 << n
    weights = q.values(order)
    correction = np.zeros(res.size)
    top = np.zeros(res.size)
    for k, dirichlet in iter_dirichlet_kernels(res, order):
        if k < order:
            correction += weights[k] * dirichlet
        else:
            top = dirichlet
    twist = walsh_signs(order - 1, atom_indices(res))
    return StepFunction(res, top - twist * correction / q.Q(order))
