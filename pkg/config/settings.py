"""Configurações centralizadas do projeto."""

import os
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

MAX_RESOLUTION = 24


def _env_threads() -> int:
    raw = os.getenv("WN_THREADS", "")
    if raw.strip():
        return max(1, int(raw))
    return max(1, min(8, os.cpu_count() or 1))


@dataclass(frozen=True)
class ComputeConfig:
    """Configurações de computação (resolução, paralelismo, lotes)."""

    threads: int = field(default_factory=_env_threads)
    resolution: int = field(default_factory=lambda: int(os.getenv("WN_RESOLUTION", "12")))
    max_resolution: int = MAX_RESOLUTION
    batch_rows: int = 64
    # limite de elementos (linhas x átomos) da tabela de médias de Fejér em cache
    cesaro_cache_limit: int = 1 << 24
    # orçamento em bytes do cache de núcleos (WN_KERNEL_CACHE_MB)
    kernel_cache_bytes: int = field(default_factory=lambda: int(os.getenv("WN_KERNEL_CACHE_MB", "256")) << 20)


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerâncias numéricas."""

    holds: float = 1e-9
    agreement: float = 1e-10
    underflow: float = 1e-13


@dataclass(frozen=True)
class ExperimentConfig:
    """Configurações dos experimentos de verificação."""

    regularity_threshold: float = 0.01
    slope_tolerance: float = 0.15
    growth_threshold: float = 0.1
    log_band_factor: float = 3.0
    convergence_ratio: float = 0.5
    seed: int = field(default_factory=lambda: int(os.getenv("WN_SEED", "0")))
    matrix_path: Path = BASE_DIR / "config" / "matrix.yaml"


@dataclass(frozen=True)
class AppConfig:
    """Configuração principal da aplicação."""

    compute: ComputeConfig = field(default_factory=ComputeConfig)
    tolerance: ToleranceConfig = field(default_factory=ToleranceConfig)
    experiment: ExperimentConfig = field(default_factory=ExperimentConfig)
    output_dir: Path = field(default_factory=lambda: Path(os.getenv("WN_OUTPUT_DIR", "out")))
    log_level: str = field(default_factory=lambda: os.getenv("LOG_LEVEL", "INFO"))


def get_config() -> AppConfig:
    """Factory para obter configuração da aplicação."""
    return AppConfig()
