"""Sequências de pesos de Nörlund {q_k} com somas parciais Q_n em cache."""

from __future__ import annotations

import itertools
import logging
import threading
from collections.abc import Callable
from enum import Enum
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.errors import DomainError, FormatError

logger = logging.getLogger(__name__)

Generator = Callable[[NDArray[np.float64]], NDArray[np.float64]]

_UIDS = itertools.count(1)


class WeightFamily(str, Enum):
    """Famílias de pesos suportadas pelo descritor textual."""

    CONST = "const"
    POLY = "poly"
    LOG = "log"
    GEOMETRIC = "geom"
    CUSTOM = "custom"
    DELTA = "delta"
    STAIR = "stair"


class Monotonicity(str, Enum):
    """Classe de monotonicidade de q_k num intervalo consultado."""

    CONSTANT = "constant"
    NON_DECREASING = "non-decreasing"
    NON_INCREASING = "non-increasing"
    NEITHER = "neither"

    @property
    def is_non_decreasing(self) -> bool:
        return self in (Monotonicity.CONSTANT, Monotonicity.NON_DECREASING)

    @property
    def is_non_increasing(self) -> bool:
        return self in (Monotonicity.CONSTANT, Monotonicity.NON_INCREASING)


def classify_monotonicity(values: NDArray[np.float64]) -> Monotonicity:
    diffs = np.diff(values)
    rising = bool(np.all(diffs >= 0))
    falling = bool(np.all(diffs <= 0))
    if rising and falling:
        return Monotonicity.CONSTANT
    if rising:
        return Monotonicity.NON_DECREASING
    if falling:
        return Monotonicity.NON_INCREASING
    return Monotonicity.NEITHER


class WeightSequence:
    """Sequência q_k >= 0 com q_0 > 0, avaliada sob demanda.

    Os valores e as somas parciais Q_n = sum_{k<n} q_k ficam em cache e
    crescem por duplicação; o crescimento é protegido por lock e os
    arrays expostos são somente leitura.

    Args:
        descriptor: Descritor textual (ex.: "poly:1").
        generator: Função vetorizada k -> q_k. Ignorada se ``values`` for dado.
        values: Sequência finita explícita (família custom).
    """

    _INITIAL_CAPACITY = 64

    def __init__(
        self,
        descriptor: str,
        generator: Generator | None = None,
        values: ArrayLike | None = None,
    ) -> None:
        self.descriptor = descriptor
        self.uid = next(_UIDS)
        self._generator = generator
        self._lock = threading.Lock()
        self._limit: int | None = None
        if values is not None:
            finite = np.array(values, dtype=np.float64)
            if finite.ndim != 1 or finite.size == 0:
                raise FormatError(f"Pesos '{descriptor}': sequência vazia")
            self._limit = int(finite.size)
            self._values = self._validate(finite, 0)
        elif generator is None:
            raise DomainError("WeightSequence requer gerador ou valores")
        else:
            self._values = self._validate(generator(np.arange(self._INITIAL_CAPACITY, dtype=np.float64)), 0)
        self._prefix = self._build_prefix(self._values)

    @classmethod
    def from_values(cls, values: ArrayLike, descriptor: str = "custom") -> WeightSequence:
        return cls(descriptor, values=values)

    # ─── Validação e cache ──────────────────────────────────
    def _validate(self, chunk: NDArray[np.float64], offset: int) -> NDArray[np.float64]:
        if not np.all(np.isfinite(chunk)):
            bad = offset + int(np.argmin(np.isfinite(chunk)))
            raise DomainError(f"Pesos '{self.descriptor}': q_{bad} não finito (overflow?)")
        if offset == 0 and chunk[0] <= 0:
            raise DomainError(f"Pesos '{self.descriptor}': q_0 deve ser > 0, recebido {chunk[0]}")
        if np.any(chunk < 0):
            bad = offset + int(np.argmax(chunk < 0))
            raise DomainError(f"Pesos '{self.descriptor}': q_{bad} < 0")
        return chunk

    @staticmethod
    def _build_prefix(values: NDArray[np.float64]) -> NDArray[np.float64]:
        prefix = np.concatenate(([0.0], np.cumsum(values)))
        prefix.setflags(write=False)
        values.setflags(write=False)
        return prefix

    def _ensure(self, n: int) -> None:
        if n <= self._values.size:
            return
        if self._limit is not None:
            raise DomainError(
                f"Pesos '{self.descriptor}' têm apenas {self._limit} termos; consulta até o índice {n - 1}"
            )
        assert self._generator is not None
        with self._lock:
            current = self._values.size
            if n <= current:
                return
            capacity = max(n, 2 * current)
            ks = np.arange(current, capacity, dtype=np.float64)
            chunk = self._validate(np.asarray(self._generator(ks), dtype=np.float64), current)
            values = np.concatenate((self._values, chunk))
            prefix = self._build_prefix(values)
            # prefixo antes dos valores: leitores testam o tamanho de _values
            self._prefix = prefix
            self._values = values
            logger.debug("Pesos '%s' expandidos para %d termos", self.descriptor, capacity)

    # ─── Consultas ──────────────────────────────────────────
    @property
    def length(self) -> int | None:
        """Comprimento da sequência finita, ou None se ilimitada."""
        return self._limit

    def values(self, n: int) -> NDArray[np.float64]:
        """q_0, ..., q_{n-1}."""
        if n < 0:
            raise DomainError(f"Quantidade negativa de pesos: {n}")
        self._ensure(n)
        return self._values[:n]

    def q(self, k: int) -> float:
        if k < 0:
            raise DomainError(f"Índice de peso negativo: {k}")
        self._ensure(k + 1)
        return float(self._values[k])

    def prefix_sums(self, n: int) -> NDArray[np.float64]:
        """Q_0, Q_1, ..., Q_n (comprimento n + 1, Q_0 = 0)."""
        if n < 0:
            raise DomainError(f"Ordem negativa: {n}")
        self._ensure(n)
        return self._prefix[: n + 1]

    def Q(self, n: int) -> float:
        return float(self.prefix_sums(n)[n])

    def monotonicity(self, n: int) -> Monotonicity:
        """Classe de monotonicidade de q_0..q_n (intervalo fechado [0, n])."""
        return classify_monotonicity(self.values(n + 1))

    def __repr__(self) -> str:
        return f"WeightSequence({self.descriptor!r})"


def _read_custom(path: Path, descriptor: str) -> WeightSequence:
    from src.storage import read_weights

    return WeightSequence.from_values(read_weights(path), descriptor=descriptor)


def _parse_float(text: str, descriptor: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise FormatError(f"Parâmetro inválido no descritor de pesos '{descriptor}'") from exc


def weight_family(descriptor: str) -> WeightSequence:
    """Constrói a sequência a partir do descritor.

    Gramática: ``const`` | ``poly:<beta>`` | ``log`` | ``geom:<r>`` |
    ``custom:<path>`` | ``delta`` | ``stair``.

    Raises:
        FormatError: Descritor desconhecido ou malformado.
        DomainError: Pesos inválidos (q_0 <= 0 ou q_k < 0).
    """
    text = descriptor.strip()
    name, _, arg = text.partition(":")
    try:
        family = WeightFamily(name.strip().lower())
    except ValueError as exc:
        raise FormatError(f"Família de pesos desconhecida: '{descriptor}'") from exc

    needs_arg = family in (WeightFamily.POLY, WeightFamily.GEOMETRIC, WeightFamily.CUSTOM)
    if needs_arg and not arg:
        raise FormatError(f"Família '{family.value}' requer parâmetro: '{descriptor}'")
    if not needs_arg and arg:
        raise FormatError(f"Família '{family.value}' não aceita parâmetro: '{descriptor}'")

    if family is WeightFamily.CONST:
        return WeightSequence(text, lambda k: np.ones_like(k))
    if family is WeightFamily.POLY:
        beta = _parse_float(arg, descriptor)
        return WeightSequence(text, lambda k: np.power(k + 1.0, beta))
    if family is WeightFamily.LOG:
        return WeightSequence(text, lambda k: np.log(k + 2.0))
    if family is WeightFamily.GEOMETRIC:
        r = _parse_float(arg, descriptor)
        if r <= 0:
            raise DomainError(f"Razão geométrica deve ser > 0: '{descriptor}'")
        return WeightSequence(text, lambda k: np.power(r, k))
    if family is WeightFamily.DELTA:
        return WeightSequence(text, lambda k: (k == 0).astype(np.float64))
    if family is WeightFamily.STAIR:
        return WeightSequence(text, lambda k: np.exp2(np.floor(np.sqrt(k))))
    return _read_custom(Path(arg), text)
