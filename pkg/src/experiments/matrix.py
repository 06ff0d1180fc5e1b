"""Descritores textuais de funções e faixas de ordens, e a matriz de verificação."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from config.settings import get_config
from src.dyadic.functions import StepFunction
from src.dyadic.group import as_resolution
from src.errors import FormatError, WalshError
from src.experiments.reports import TheoremId
from src.metrics.lipschitz import LipVariant, lip_generator
from src.transform.walsh import walsh_function

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderRange:
    """Faixa ``A:B`` ou ``A:B:step`` (inclusiva). Um inteiro isolado vale ``A:A``."""

    start: int
    stop: int
    step: int | None = None

    @classmethod
    def parse(cls, text: str) -> OrderRange:
        parts = str(text).strip().split(":")
        try:
            numbers = [int(part) for part in parts]
        except ValueError as exc:
            raise FormatError(f"Faixa de ordens inválida: '{text}'") from exc
        if len(numbers) == 1:
            numbers = [numbers[0], numbers[0]]
        if len(numbers) > 3:
            raise FormatError(f"Faixa de ordens inválida: '{text}'")
        start, stop = numbers[0], numbers[1]
        step = numbers[2] if len(numbers) == 3 else None
        if start > stop or (step is not None and step < 1):
            raise FormatError(f"Faixa de ordens vazia: '{text}'")
        return cls(start, stop, step)

    def orders(self) -> list[int]:
        """Todas as ordens (passo 1 por padrão)."""
        return list(range(self.start, self.stop + 1, self.step or 1))

    def dyadic(self) -> list[int]:
        """Potências de 2 contidas na faixa."""
        return [1 << e for e in self.exponents()]

    def exponents(self) -> list[int]:
        first = max(0, (max(1, self.start) - 1).bit_length())
        return [e for e in range(first, self.stop.bit_length()) if self.start <= 1 << e <= self.stop]

    def rate_orders(self) -> list[int]:
        """Ordens de um experimento de taxa: diádicas, ou aritméticas se houver passo."""
        return self.orders() if self.step is not None else self.dyadic()

    def __str__(self) -> str:
        if self.step is None:
            return f"{self.start}:{self.stop}"
        return f"{self.start}:{self.stop}:{self.step}"


def resolve_function(spec: str, M: int, seed: int | None = None) -> StepFunction:
    """Constrói uma função escada a partir do descritor.

    Gramática: ``walsh:k`` | ``lip:alpha[:variant[:seed]]`` | ``const:c`` |
    ``file:path`` | ``random[:seed]``.

    Raises:
        FormatError: Descritor desconhecido ou malformado, ou arquivo inválido.
    """
    res = as_resolution(M)
    default_seed = get_config().experiment.seed if seed is None else seed
    name, _, rest = spec.strip().partition(":")
    args = rest.split(":") if rest else []
    try:
        if name == "walsh" and len(args) == 1:
            return walsh_function(int(args[0]), res)
        if name == "lip" and 1 <= len(args) <= 3:
            variant = LipVariant(args[1]) if len(args) >= 2 else LipVariant.LACUNARY
            lip_seed = int(args[2]) if len(args) == 3 else default_seed
            return lip_generator(float(args[0]), res, variant, lip_seed)
        if name == "const" and len(args) == 1:
            return StepFunction.constant(float(args[0]), res)
        if name == "random" and len(args) <= 1:
            rng = np.random.default_rng(int(args[0]) if args else default_seed)
            return StepFunction(res, rng.uniform(-1.0, 1.0, res.size))
        if name == "file" and rest:
            from src.storage import read_step_function

            f = read_step_function(Path(rest))
            if f.M != res.M:
                raise FormatError(f"Arquivo '{rest}' tem resolução M={f.M}, esperado M={res.M}")
            return f
    except WalshError:
        raise
    except ValueError as exc:
        raise FormatError(f"Descritor de função inválido: '{spec}'") from exc
    raise FormatError(f"Descritor de função desconhecido: '{spec}'")


@dataclass(frozen=True)
class TheoremCells:
    """Pesos e faixa de ordens varridas para uma desigualdade."""

    weights: list[str]
    orders: OrderRange


@dataclass(frozen=True)
class MatrixSpec:
    """Matriz de verificação: funções x expoentes p x pesos x ordens."""

    resolution: int
    seed: int
    functions: list[str]
    ps: list[float]
    theorems: dict[TheoremId, TheoremCells] = field(default_factory=dict)


def load_matrix(path: Path | None = None) -> MatrixSpec:
    """Lê a matriz de verificação de um YAML (padrão: config/matrix.yaml).

    Raises:
        FormatError: Estrutura inválida.
    """
    target = path or get_config().experiment.matrix_path
    try:
        with open(target, encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except (OSError, yaml.YAMLError) as exc:
        raise FormatError(f"Falha ao ler matriz '{target}': {exc}") from exc
    if not isinstance(raw, dict):
        raise FormatError(f"Matriz '{target}' deve ser um mapeamento")
    try:
        theorems = {
            TheoremId(name): TheoremCells(
                weights=[str(w) for w in (cells.get("weights") or ["const"])],
                orders=OrderRange.parse(cells["orders"]),
            )
            for name, cells in (raw.get("theorems") or {}).items()
        }
        spec = MatrixSpec(
            resolution=int(raw.get("resolution", get_config().compute.resolution)),
            seed=int(raw.get("seed", get_config().experiment.seed)),
            functions=[str(f) for f in raw["functions"]],
            ps=[float(p) for p in raw["p"]],
            theorems=theorems,
        )
    except WalshError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"Matriz '{target}' malformada: {exc}") from exc
    logger.info(
        "Matriz carregada: %d funções, %d expoentes, %d desigualdades",
        len(spec.functions),
        len(spec.ps),
        len(spec.theorems),
    )
    return spec
