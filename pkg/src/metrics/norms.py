"""Normas L^p e módulo de continuidade diádico omega_p(2^{-k}, f)."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from src.dyadic.functions import StepFunction, atom_indices
from src.errors import DomainError
from src.transform.walsh import analyze, fwht

logger = logging.getLogger(__name__)

# elementos (translações x átomos) avaliados por bloco
_CHUNK_ELEMENTS = 1 << 22


class ModulusMethod(str, Enum):
    """Cálculo do módulo: direto (exato) ou espectral (apenas p = 2)."""

    DIRECT = "direct"
    SPECTRAL = "spectral"


def _check_exponent(p: float) -> None:
    if not (p >= 1):
        raise DomainError(f"Expoente p deve ser >= 1, recebido {p}")


def norms_of_rows(rows: NDArray[np.float64], p: float) -> NDArray[np.float64]:
    """Norma L^p (medida de Haar normalizada) de cada linha."""
    _check_exponent(p)
    magnitude = np.abs(rows)
    if math.isinf(p):
        return np.asarray(np.max(magnitude, axis=-1))
    if p == 1:
        return np.asarray(np.mean(magnitude, axis=-1))
    if p == 2:
        return np.asarray(np.sqrt(np.mean(magnitude * magnitude, axis=-1)))
    return np.asarray(np.mean(magnitude**p, axis=-1) ** (1.0 / p))


def lp_norm(f: StepFunction, p: float) -> float:
    """(2^{-M} sum_j |f[j]|^p)^{1/p}; p = inf dá o máximo absoluto (diagnóstico)."""
    return float(norms_of_rows(f.values, p))


@dataclass(frozen=True, eq=False)
class ModulusProfile:
    """omega_p(2^{-k}, f) para k = 0..M."""

    p: float
    M: int
    omegas: NDArray[np.float64]

    def omega(self, k: int) -> float:
        if not 0 <= k <= self.M:
            raise DomainError(f"Escala k={k} fora de [0, {self.M}]")
        return float(self.omegas[k])

    def rows(self) -> list[tuple[int, float]]:
        return [(k, float(value)) for k, value in enumerate(self.omegas)]


def translation_distances(f: StepFunction, p: float, translations: NDArray[np.int64]) -> NDArray[np.float64]:
    """||f(. + t) - f||_p para cada translação t (índices), em blocos."""
    _check_exponent(p)
    indices = atom_indices(f.resolution)
    values = f.values
    out = np.empty(translations.size)
    step = max(1, _CHUNK_ELEMENTS // f.size)
    for start in range(0, translations.size, step):
        block = translations[start : start + step]
        shifted = values[indices[None, :] ^ block[:, None]]
        out[start : start + step] = norms_of_rows(shifted - values[None, :], p)
    return out


def _spectral_distances(f: StepFunction) -> NDArray[np.float64]:
    # ||f(.+t) - f||_2^2 = 2 sum_k f^(k)^2 (1 - w_k(t))
    energy_density = analyze(f).coefficients ** 2
    correlation = fwht(energy_density)
    return np.sqrt(np.maximum(0.0, 2.0 * (correlation[0] - correlation)))


def modulus(f: StepFunction, p: float, k: int) -> float:
    """omega_p(2^{-k}, f): máximo sobre t em I_k de ||f(. + t) - f||_p (sup finito exato)."""
    if not 0 <= k <= f.M:
        raise DomainError(f"Escala k={k} fora de [0, {f.M}]")
    translations = np.arange(0, f.size, 1 << k, dtype=np.int64)
    return float(np.max(translation_distances(f, p, translations)))


def modulus_profile(f: StepFunction, p: float, method: ModulusMethod = ModulusMethod.DIRECT) -> ModulusProfile:
    """Perfil completo omega_k, k = 0..M, com uma única passada pelas translações.

    omega_k é o máximo de d(t) sobre os múltiplos de 2^k, e os conjuntos
    aninhados garantem monotonicidade exata.
    """
    _check_exponent(p)
    if method is ModulusMethod.SPECTRAL:
        if p != 2:
            raise DomainError("Caminho espectral do módulo exige p = 2")
        distances = _spectral_distances(f)
    else:
        distances = translation_distances(f, p, atom_indices(f.resolution))
    omegas = np.array([np.max(distances[:: 1 << k]) for k in range(f.M + 1)])
    omegas.setflags(write=False)
    logger.debug("Perfil de módulo calculado: p=%s M=%d (%s)", p, f.M, method.value)
    return ModulusProfile(p=p, M=f.M, omegas=omegas)
