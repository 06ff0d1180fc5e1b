"""Modelo em resolução finita do grupo diádico (grupo de Walsh) G.

Um elemento de G é representado pelas suas M primeiras coordenadas
binárias, codificadas num índice inteiro: o bit k do índice é a
coordenada x_k (x_0 é o bit menos significativo). Com essa convenção a
operação do grupo é o XOR dos índices e os intervalos I_n(x) são as
classes de resíduo módulo 2^n.
"""

import operator
from dataclasses import dataclass

from config.settings import MAX_RESOLUTION
from src.errors import DomainError, ResolutionError


@dataclass(frozen=True)
class Resolution:
    """Número M de coordenadas binárias retidas (1 <= M <= 24)."""

    M: int

    def __post_init__(self) -> None:
        if isinstance(self.M, bool):
            raise ResolutionError(f"Resolução deve ser inteira, recebido {self.M!r}")
        try:
            M = operator.index(self.M)
        except TypeError as exc:
            raise ResolutionError(f"Resolução deve ser inteira, recebido {self.M!r}") from exc
        object.__setattr__(self, "M", M)
        if not 1 <= self.M <= MAX_RESOLUTION:
            raise ResolutionError(f"Resolução fora de [1, {MAX_RESOLUTION}]: M={self.M}")

    @property
    def size(self) -> int:
        """Quantidade de átomos 2^M."""
        return 1 << self.M

    def __int__(self) -> int:
        return self.M


def as_resolution(M: "Resolution | int") -> Resolution:
    """Normaliza um inteiro ou Resolution para Resolution."""
    return M if isinstance(M, Resolution) else Resolution(M)


@dataclass(frozen=True)
class GroupElement:
    """Átomo de G na resolução M, codificado como índice de M bits."""

    index: int
    resolution: Resolution

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.resolution.size:
            raise DomainError(f"Índice {self.index} fora de [0, 2^{self.resolution.M})")

    @classmethod
    def identity(cls, M: "Resolution | int") -> "GroupElement":
        return cls(0, as_resolution(M))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return group_add(self, other)


@dataclass(frozen=True)
class DyadicInterval:
    """Intervalo diádico I_n(x): elementos cujas n primeiras coordenadas estão fixas."""

    depth: int
    residue: int = 0

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise DomainError(f"Profundidade negativa: {self.depth}")
        if not 0 <= self.residue < (1 << self.depth):
            raise DomainError(f"Resíduo {self.residue} fora de [0, 2^{self.depth})")

    @property
    def measure(self) -> float:
        """Medida de Haar 2^{-n}."""
        return 2.0**-self.depth


def _check_same(a: Resolution, b: Resolution) -> None:
    if a != b:
        raise ResolutionError(f"Resoluções incompatíveis: M={a.M} e M={b.M}")


def group_add(a: GroupElement, b: GroupElement) -> GroupElement:
    """Soma coordenada a coordenada módulo 2 (XOR dos índices)."""
    _check_same(a.resolution, b.resolution)
    return GroupElement(a.index ^ b.index, a.resolution)


def unit_vector(t: int, M: "Resolution | int") -> GroupElement:
    """Elemento e_t: coordenada x_t = 1 e todas as demais nulas."""
    res = as_resolution(M)
    if not 0 <= t < res.M:
        raise DomainError(f"Coordenada t={t} fora de [0, {res.M})")
    return GroupElement(1 << t, res)


def interval_of(x: GroupElement, n: int) -> DyadicInterval:
    """I_n(x), o intervalo de profundidade n que contém x."""
    if not 0 <= n <= x.resolution.M:
        raise DomainError(f"Profundidade n={n} fora de [0, {x.resolution.M}]")
    return DyadicInterval(n, x.index & ((1 << n) - 1))


def interval_contains(interval: DyadicInterval, x: GroupElement) -> bool:
    """Verdadeiro se index(x) mod 2^depth coincide com o resíduo do intervalo."""
    return (x.index & ((1 << interval.depth) - 1)) == interval.residue


def interval_measure(interval: DyadicInterval) -> float:
    return interval.measure
