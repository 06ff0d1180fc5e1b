"""Fixtures compartilhadas para testes."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Garante que o root do projeto está no path para imports
_PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(_PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(_PROJECT_ROOT))

from src.dyadic.functions import StepFunction  # noqa: E402
from src.experiments.engine import VerificationEngine  # noqa: E402
from src.means.weights import WeightSequence, weight_family  # noqa: E402
from src.metrics.lipschitz import lip_generator  # noqa: E402


@pytest.fixture
def small_m() -> int:
    return 6


@pytest.fixture
def random_function(small_m: int) -> StepFunction:
    rng = np.random.default_rng(1234)
    return StepFunction.from_values(rng.standard_normal(1 << small_m))


@pytest.fixture
def lip_half() -> StepFunction:
    return lip_generator(0.5, 10)


@pytest.fixture
def const_weights() -> WeightSequence:
    return weight_family("const")


@pytest.fixture
def linear_weights() -> WeightSequence:
    return weight_family("poly:1")


@pytest.fixture
def decreasing_weights() -> WeightSequence:
    return weight_family("poly:-0.5")


@pytest.fixture
def spike_weights() -> WeightSequence:
    """q_k = k em potências de 2 e 1 no restante: não monótona."""
    values = np.ones(4097)
    for j in range(13):
        values[1 << j] = float(1 << j)
    return WeightSequence.from_values(values, descriptor="spike")


@pytest.fixture
def engine() -> VerificationEngine:
    return VerificationEngine()


@pytest.fixture
def output_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    monkeypatch.setenv("WN_OUTPUT_DIR", str(tmp_path))
    return tmp_path
