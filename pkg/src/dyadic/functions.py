"""Funções escada: representantes exatos de f em L^p(G) na resolução M."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.dyadic.group import DyadicInterval, GroupElement, Resolution, as_resolution
from src.errors import DomainError, ResolutionError


def _frozen(values: ArrayLike) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


def atom_indices(M: Resolution | int) -> NDArray[np.int64]:
    """Índices 0..2^M-1 dos átomos."""
    return np.arange(as_resolution(M).size, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Função constante em cada uma das 2^M classes laterais de I_M.

    Os valores são imutáveis (array numpy somente leitura).
    """

    resolution: Resolution
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values is not self.values:
            values = _frozen(values)
            object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.shape[0] != self.resolution.size:
            raise ResolutionError(
                f"Esperados {self.resolution.size} valores para M={self.resolution.M}, recebidos {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("Função escada com valores não finitos")
        if values.flags.writeable:
            object.__setattr__(self, "values", _frozen(values))

    # ─── Construtores ───────────────────────────────────────
    @classmethod
    def from_values(cls, values: ArrayLike) -> StepFunction:
        """Infere M a partir do comprimento (potência de 2)."""
        array = _frozen(values)
        size = array.shape[0] if array.ndim == 1 else 0
        if size < 2 or size & (size - 1):
            raise ResolutionError(f"Comprimento {size} não é potência de 2 (>= 2)")
        return cls(Resolution(size.bit_length() - 1), array)

    @classmethod
    def constant(cls, c: float, M: Resolution | int) -> StepFunction:
        res = as_resolution(M)
        return cls(res, np.full(res.size, float(c)))

    @classmethod
    def zeros(cls, M: Resolution | int) -> StepFunction:
        return cls.constant(0.0, M)

    @classmethod
    def indicator(cls, interval: DyadicInterval, M: Resolution | int) -> StepFunction:
        """Indicadora do intervalo diádico (profundidade <= M)."""
        res = as_resolution(M)
        if interval.depth > res.M:
            raise DomainError(f"Intervalo de profundidade {interval.depth} > M={res.M}")
        mask = (atom_indices(res) & ((1 << interval.depth) - 1)) == interval.residue
        return cls(res, mask.astype(np.float64))

    @classmethod
    def atom(cls, index: int, M: Resolution | int) -> StepFunction:
        res = as_resolution(M)
        return cls.indicator(DyadicInterval(res.M, index), res)

    # ─── Acesso ─────────────────────────────────────────────
    @property
    def M(self) -> int:
        return self.resolution.M

    @property
    def size(self) -> int:
        return self.resolution.size

    def __len__(self) -> int:
        return self.size

    def __call__(self, x: GroupElement) -> float:
        if x.resolution != self.resolution:
            raise ResolutionError("Elemento e função em resoluções diferentes")
        return float(self.values[x.index])

    def allclose(self, other: StepFunction, atol: float = 1e-12) -> bool:
        _check_same(self, other)
        return bool(np.max(np.abs(self.values - other.values), initial=0.0) <= atol)

    # ─── Aritmética ─────────────────────────────────────────
    def _combine(self, other: StepFunction | float, op: str) -> StepFunction:
        if isinstance(other, StepFunction):
            _check_same(self, other)
            rhs: NDArray[np.float64] | float = other.values
        else:
            rhs = float(other)
        if op == "+":
            out = self.values + rhs
        elif op == "-":
            out = self.values - rhs
        elif op == "*":
            out = self.values * rhs
        else:
            out = self.values / rhs
        return StepFunction(self.resolution, out)

    def __add__(self, other: StepFunction | float) -> StepFunction:
        return self._combine(other, "+")

    __radd__ = __add__

    def __sub__(self, other: StepFunction | float) -> StepFunction:
        return self._combine(other, "-")

    def __rsub__(self, other: float) -> StepFunction:
        return StepFunction(self.resolution, float(other) - self.values)

    def __mul__(self, other: StepFunction | float) -> StepFunction:
        return self._combine(other, "*")

    __rmul__ = __mul__

    def __truediv__(self, other: float) -> StepFunction:
        return self._combine(other, "/")

    def __neg__(self) -> StepFunction:
        return StepFunction(self.resolution, -self.values)

    def __abs__(self) -> StepFunction:
        return StepFunction(self.resolution, np.abs(self.values))


def _check_same(f: StepFunction, g: StepFunction) -> None:
    if f.resolution != g.resolution:
        raise ResolutionError(f"Resoluções incompatíveis: M={f.M} e M={g.M}")


def translate(f: StepFunction, t: GroupElement) -> StepFunction:
    """f(x + t): values[j] = f.values[j XOR index(t)]."""
    if t.resolution != f.resolution:
        raise ResolutionError(f"Resoluções incompatíveis: M={f.M} e M={t.resolution.M}")
    if t.index == 0:
        return f
    return StepFunction(f.resolution, f.values[atom_indices(f.resolution) ^ t.index])


def integrate(f: StepFunction) -> float:
    """Integral de Haar: 2^{-M} vezes a soma dos valores.

    A soma é corretamente arredondada, portanto invariante por permutação
    dos átomos (em particular por translação).
    """
    return math.fsum(f.values) / f.size
