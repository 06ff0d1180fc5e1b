"""Análise e síntese de Walsh-Paley: coeficientes, somas parciais e transformada rápida."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.dyadic.functions import StepFunction, atom_indices
from src.dyadic.group import Resolution, as_resolution
from src.errors import DomainError, ResolutionError

logger = logging.getLogger(__name__)


def fwht(values: ArrayLike) -> NDArray[np.float64]:
    """Transformada rápida de Walsh-Hadamard não normalizada, no último eixo.

    Borboletas em ordem natural de índices (sem reversão de bits), feitas
    in place sobre uma única cópia da entrada:
    out[..., k] = sum_j values[..., j] * (-1)^{popcount(k AND j)}.
    A ordem das somas em cada estágio é fixa, logo o resultado não depende
    do agendamento de quem chama.
    """
    data = np.array(values, dtype=np.float64, order="C")
    size = data.shape[-1]
    if size < 1 or size & (size - 1):
        raise ResolutionError(f"Comprimento {size} não é potência de 2")
    lead = data.shape[:-1]
    scratch = np.empty((*lead, size // 2))
    h = 1
    while h < size:
        blocks = data.reshape(*lead, size // (2 * h), 2, h)
        upper = blocks[..., 0, :]
        lower = blocks[..., 1, :]
        saved = scratch.reshape(*lead, size // (2 * h), h)
        np.copyto(saved, upper)
        upper += lower
        np.subtract(saved, lower, out=lower)
        h *= 2
    return data


def walsh_signs(n: int, indices: NDArray[np.int64]) -> NDArray[np.float64]:
    """(-1)^{popcount(n AND j)} para cada índice j."""
    parity = np.bitwise_count(indices & n) & 1
    return 1.0 - 2.0 * parity.astype(np.float64)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Coeficientes de Walsh-Paley f^(0..2^M-1)."""

    resolution: Resolution
    coefficients: NDArray[np.float64]

    def __post_init__(self) -> None:
        coefficients = np.asarray(self.coefficients, dtype=np.float64)
        if coefficients.ndim != 1 or coefficients.shape[0] != self.resolution.size:
            raise ResolutionError(
                f"Esperados {self.resolution.size} coeficientes para M={self.resolution.M}"
            )
        if coefficients is self.coefficients and not coefficients.flags.writeable:
            return
        frozen = np.array(coefficients)
        frozen.setflags(write=False)
        object.__setattr__(self, "coefficients", frozen)

    @property
    def M(self) -> int:
        return self.resolution.M

    @property
    def size(self) -> int:
        return self.resolution.size

    def truncate(self, n: int) -> Spectrum:
        """Zera as frequências >= n."""
        if not 0 <= n <= self.size:
            raise DomainError(f"Ordem n={n} fora de [0, 2^{self.M}]")
        coefficients = np.array(self.coefficients)
        coefficients[n:] = 0.0
        return Spectrum(self.resolution, coefficients)

    def energy(self) -> float:
        """Soma dos quadrados dos coeficientes (lado direito de Parseval)."""
        return float(np.dot(self.coefficients, self.coefficients))


def _check_frequency(n: int, res: Resolution) -> None:
    if not 0 <= n < res.size:
        raise DomainError(f"Frequência n={n} fora de [0, 2^{res.M})")


def walsh_function(n: int, M: Resolution | int) -> StepFunction:
    """w_n = produto das funções de Rademacher selecionadas pelos bits de n."""
    res = as_resolution(M)
    _check_frequency(n, res)
    return StepFunction(res, walsh_signs(n, atom_indices(res)))


def rademacher(k: int, M: Resolution | int) -> StepFunction:
    """r_k(x) = (-1)^{x_k} = w_{2^k}."""
    res = as_resolution(M)
    if not 0 <= k < res.M:
        raise DomainError(f"Rademacher r_{k} inexistente na resolução M={res.M}")
    return walsh_function(1 << k, res)


def analyze(f: StepFunction) -> Spectrum:
    """f^(k) = 2^{-M} sum_j f(j) w_k(j), via borboleta O(M 2^M)."""
    return Spectrum(f.resolution, fwht(f.values) / f.size)


def naive_analyze(f: StepFunction) -> Spectrum:
    """Oráculo O(4^M) por soma direta; uso em testes e autoverificação."""
    indices = atom_indices(f.resolution)
    coefficients = np.array([np.dot(f.values, walsh_signs(k, indices)) for k in range(f.size)])
    return Spectrum(f.resolution, coefficients / f.size)


def synthesize(s: Spectrum) -> StepFunction:
    """Síntese não normalizada: values[j] = sum_k s[k] w_k(j)."""
    return StepFunction(s.resolution, fwht(s.coefficients))


def partial_sum(f: StepFunction, n: int) -> StepFunction:
    """S_n f = sum_{k<n} f^(k) w_k, com S_0 f = 0."""
    if not 0 <= n <= f.size:
        raise DomainError(f"Ordem n={n} fora de [0, 2^{f.M}]")
    if n == 0:
        return StepFunction.zeros(f.resolution)
    if n == f.size:
        return f
    return synthesize(analyze(f).truncate(n))
