"""Testes para descritores, matriz de verificação e VerificationEngine."""

from pathlib import Path

import numpy as np
import pytest

from config.settings import AppConfig, ComputeConfig
from src.dyadic.functions import StepFunction
from src.errors import DomainError, FormatError, PreconditionError
from src.experiments import (
    OrderRange,
    TheoremId,
    VerificationEngine,
    load_matrix,
    resolve_function,
    verify_fejer_estimate,
)
from src.metrics.lipschitz import LipVariant, lip_generator
from src.storage import write_step_function
from src.transform.walsh import walsh_function


@pytest.fixture
def functions() -> dict[str, StepFunction]:
    return {"walsh:1": walsh_function(1, 8), "lip:0.5": lip_generator(0.5, 8)}


class TestOrderRange:
    """Testes para a faixa de ordens A:B[:step]."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("2:6", [2, 3, 4, 5, 6]),
            ("5", [5]),
            ("1:10:3", [1, 4, 7, 10]),
        ],
    )
    def test_orders(self, text: str, expected: list[int]) -> None:
        assert OrderRange.parse(text).orders() == expected

    @pytest.mark.parametrize("text", ["a:b", "5:1", "1:2:3:4", "1:5:0", ""])
    def test_malformed(self, text: str) -> None:
        with pytest.raises(FormatError):
            OrderRange.parse(text)

    def test_exponents(self) -> None:
        assert OrderRange.parse("1:2048").exponents() == list(range(12))
        assert OrderRange.parse("3:20").exponents() == [2, 3, 4]

    def test_rate_orders(self) -> None:
        assert OrderRange.parse("16:256").rate_orders() == [16, 32, 64, 128, 256]
        assert OrderRange.parse("16:64:16").rate_orders() == [16, 32, 48, 64]

    def test_str(self) -> None:
        assert str(OrderRange.parse("2:9")) == "2:9"
        assert str(OrderRange.parse("2:9:2")) == "2:9:2"


class TestResolveFunction:
    """Testes para o descritor de funções."""

    def test_walsh(self) -> None:
        assert resolve_function("walsh:3", 5).allclose(walsh_function(3, 5))

    def test_lip(self) -> None:
        assert resolve_function("lip:0.5", 6).allclose(lip_generator(0.5, 6))
        signed = resolve_function("lip:0.5:random:3", 6)
        assert signed.allclose(lip_generator(0.5, 6, LipVariant.RANDOM, seed=3))

    def test_constant(self) -> None:
        assert np.all(resolve_function("const:2.5", 4).values == 2.5)

    def test_random_is_seeded_and_bounded(self) -> None:
        a = resolve_function("random:7", 6)
        assert a.allclose(resolve_function("random:7", 6))
        assert np.all(np.abs(a.values) <= 1.0)

    def test_random_uses_default_seed(self) -> None:
        assert resolve_function("random", 5, seed=4).allclose(resolve_function("random:4", 5))

    def test_file(self, tmp_path: Path, random_function: StepFunction) -> None:
        path = write_step_function(random_function, tmp_path / "f.csv")
        assert resolve_function(f"file:{path}", random_function.M).allclose(random_function)

    def test_file_resolution_mismatch(self, tmp_path: Path, random_function: StepFunction) -> None:
        path = write_step_function(random_function, tmp_path / "f.csv")
        with pytest.raises(FormatError, match="resolução"):
            resolve_function(f"file:{path}", random_function.M + 1)

    @pytest.mark.parametrize("spec", ["bogus", "walsh", "walsh:x", "lip:0.5:zigzag", "const:1:2"])
    def test_malformed(self, spec: str) -> None:
        with pytest.raises(FormatError):
            resolve_function(spec, 4)

    def test_frequency_out_of_range_keeps_domain_error(self) -> None:
        with pytest.raises(DomainError):
            resolve_function("walsh:99", 5)


class TestLoadMatrix:
    """Testes para a leitura da matriz YAML."""

    def test_default_matrix(self) -> None:
        matrix = load_matrix()
        assert matrix.resolution == 12
        assert matrix.ps == [1.0, 2.0, 3.0]
        assert len(matrix.functions) == 16
        assert set(matrix.theorems) == set(TheoremId)
        assert matrix.theorems[TheoremId.T2].orders.exponents() == list(range(12))

    def test_custom_matrix(self, tmp_path: Path) -> None:
        path = tmp_path / "m.yaml"
        path.write_text(
            "resolution: 6\nseed: 3\np: [2]\nfunctions: [walsh:1]\ntheorems:\n  t1:\n    orders: '1:16'\n",
            encoding="utf-8",
        )
        matrix = load_matrix(path)
        assert (matrix.resolution, matrix.seed) == (6, 3)
        assert matrix.theorems[TheoremId.T1].weights == ["const"]

    @pytest.mark.parametrize(
        "content",
        [
            "- just\n- a list\n",
            "p: [2]\ntheorems: {}\n",
            "p: [2]\nfunctions: [walsh:1]\ntheorems:\n  t9:\n    orders: '1:4'\n",
            "p: [2]\nfunctions: [walsh:1]\ntheorems:\n  t1:\n    orders: '4:1'\n",
            "p: [\n",
        ],
    )
    def test_malformed(self, tmp_path: Path, content: str) -> None:
        path = tmp_path / "m.yaml"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(FormatError):
            load_matrix(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(FormatError):
            load_matrix(tmp_path / "absent.yaml")


class TestVerificationEngine:
    """Testes para a varredura de células."""

    def test_sweep_holds_and_is_sorted(
        self, engine: VerificationEngine, functions: dict[str, StepFunction]
    ) -> None:
        reports = engine.sweep(TheoremId.T1, functions, [1.0, 2.0], ["const", "poly:1"], range(1, 65))
        assert len(reports) == 2 * 2 * 2 * 64
        assert [r.key for r in reports] == sorted(r.key for r in reports)
        assert VerificationEngine.all_hold(reports)

    def test_sweep_is_independent_of_threads(self, functions: dict[str, StepFunction]) -> None:
        rows = []
        for threads in (1, 4):
            engine = VerificationEngine(AppConfig(compute=ComputeConfig(threads=threads)))
            reports = engine.sweep(TheoremId.FEJER, functions, [1.0, 3.0], [], range(2, 100))
            rows.append([r.to_row() for r in reports])
        assert rows[0] == rows[1]

    def test_fejer_sweep_holds(self, engine: VerificationEngine, functions: dict[str, StepFunction]) -> None:
        reports = engine.sweep(TheoremId.FEJER, functions, [1.0, 2.0, 3.0], [], range(2, 129))
        assert all(r.holds for r in reports)

    def test_dyadic_orders_use_exponents(
        self, engine: VerificationEngine, functions: dict[str, StepFunction]
    ) -> None:
        reports = engine.sweep(TheoremId.T2, functions, [2.0], ["poly:-0.5"], range(8))
        assert sorted({r.n for r in reports}) == [1 << e for e in range(8)]
        assert VerificationEngine.all_hold(reports)

    def test_monotonicity_precondition(
        self, engine: VerificationEngine, functions: dict[str, StepFunction]
    ) -> None:
        with pytest.raises(PreconditionError, match="não decrescentes"):
            engine.sweep(TheoremId.T1, functions, [2.0], ["poly:-1"], range(1, 9))
        with pytest.raises(PreconditionError, match="não crescentes"):
            engine.sweep(TheoremId.T3, functions, [2.0], ["poly:1"], range(1, 9))

    def test_empty_orders(self, engine: VerificationEngine, functions: dict[str, StepFunction]) -> None:
        with pytest.raises(DomainError):
            engine.sweep(TheoremId.FEJER, functions, [2.0], [], [])

    def test_summary(self, engine: VerificationEngine, functions: dict[str, StepFunction]) -> None:
        reports = engine.sweep(TheoremId.T3, functions, [2.0], ["const", "poly:-0.5"], range(1, 65))
        summary = VerificationEngine.summarize(reports)["t3"]
        assert summary["cells"] == 2 * 2 * 64
        assert summary["unchecked"] == summary["cells"]
        assert summary["fails"] == 0
        assert summary["condition_bounded"] == {"const": True, "poly:-0.5": False}
        assert summary["sup_ratio"] > 0

    def test_profile_is_cached(self, engine: VerificationEngine, random_function: StepFunction) -> None:
        first = engine.profile("f", random_function, 2.0)
        assert engine.profile("f", random_function, 2.0) is first

    def test_profile_follows_function_not_label(self, engine: VerificationEngine) -> None:
        first = resolve_function("const:1", 8)
        second = resolve_function("lip:0.5:random:3", 8)
        assert engine.profile("f", first, 2.0) is not engine.profile("f", second, 2.0)

        engine.sweep(TheoremId.FEJER, {"f": first}, [2.0], [], [16])
        (report,) = engine.sweep(TheoremId.FEJER, {"f": second}, [2.0], [], [16])
        expected = verify_fejer_estimate(second, 2.0, 16)
        assert report.rhs == pytest.approx(expected.rhs, rel=1e-12)
        assert report.rhs > 0
        assert report.holds

    def test_matrix_rerun_with_new_seed(self, tmp_path: Path) -> None:
        path = tmp_path / "m.yaml"
        body = "resolution: 7\np: [2]\nfunctions: ['lip:0.5:random']\ntheorems:\n  fejer:\n    orders: '2:32'\n"
        path.write_text(f"seed: 1\n{body}", encoding="utf-8")
        shared = VerificationEngine()
        shared.run_matrix(load_matrix(path))
        path.write_text(f"seed: 2\n{body}", encoding="utf-8")
        matrix = load_matrix(path)
        rerun = [r.to_row() for r in shared.run_matrix(matrix)]
        fresh = [r.to_row() for r in VerificationEngine().run_matrix(matrix)]
        assert rerun == fresh

    def test_all_exponents_in_one_group_match_separate_sweeps(
        self, engine: VerificationEngine, functions: dict[str, StepFunction]
    ) -> None:
        ps = [1.0, 2.0, 3.0]
        together = engine.sweep(TheoremId.T1, functions, ps, ["poly:1"], range(1, 40))
        separate = [
            report
            for p in ps
            for report in VerificationEngine().sweep(TheoremId.T1, functions, [p], ["poly:1"], range(1, 40))
        ]
        assert [r.to_row() for r in together] == [r.to_row() for r in sorted(separate, key=lambda r: r.key)]

    def test_all_hold_ignores_unchecked(self, engine: VerificationEngine, functions: dict[str, StepFunction]) -> None:
        reports = engine.sweep(TheoremId.MS, functions, [2.0], ["const"], range(2, 17))
        assert all(r.holds is None for r in reports)
        assert VerificationEngine.all_hold(reports)

    def test_describe(self) -> None:
        assert "Fejér" in VerificationEngine.describe(TheoremId.FEJER)

    def test_run_small_matrix(self, engine: VerificationEngine, tmp_path: Path) -> None:
        path = tmp_path / "m.yaml"
        path.write_text(
            "resolution: 7\np: [1, 2]\nfunctions: [walsh:3, 'lip:1']\n"
            "theorems:\n  fejer:\n    orders: '2:64'\n  t2:\n    weights: [const]\n    orders: '1:64'\n",
            encoding="utf-8",
        )
        reports = engine.run_matrix(load_matrix(path))
        assert {r.theorem for r in reports} == {TheoremId.FEJER, TheoremId.T2}
        assert VerificationEngine.all_hold(reports)
