"""Testes para pesos, médias de Nörlund e condições sobre os pesos."""

import threading
from pathlib import Path

import numpy as np
import pytest

from config.settings import AppConfig, ComputeConfig, get_config
from src.dyadic.functions import StepFunction, integrate
from src.errors import DomainError, FormatError, ResolutionError
from src.kernels import dirichlet_kernel
from src.means import (
    CesaroTable,
    MeanMethod,
    Monotonicity,
    WeightSequence,
    batched_norlund_means,
    convolve,
    dyadic_mass_check,
    fejer_condition,
    fejer_mean,
    is_regular,
    method_spread,
    moricz_siddiqi_condition,
    naive_convolve,
    nondecreasing_condition,
    norlund_mean,
    weight_family,
)
from src.storage import write_weights
from src.transform.walsh import analyze, partial_sum, walsh_function


class TestWeightFamilies:
    """Testes para o parser de descritores e as famílias embutidas."""

    @pytest.mark.parametrize(
        "descriptor,expected",
        [
            ("const", [1.0, 1.0, 1.0, 1.0]),
            ("poly:1", [1.0, 2.0, 3.0, 4.0]),
            ("poly:2", [1.0, 4.0, 9.0, 16.0]),
            ("geom:0.5", [1.0, 0.5, 0.25, 0.125]),
            ("delta", [1.0, 0.0, 0.0, 0.0]),
        ],
    )
    def test_values(self, descriptor: str, expected: list[float]) -> None:
        assert np.allclose(weight_family(descriptor).values(4), expected)

    def test_log(self) -> None:
        assert np.allclose(weight_family("log").values(3), np.log([2.0, 3.0, 4.0]))

    def test_stair(self) -> None:
        assert np.array_equal(weight_family("stair").values(10), [1, 2, 2, 2, 4, 4, 4, 4, 4, 8])

    def test_prefix_sums_start_at_zero(self, linear_weights: WeightSequence) -> None:
        assert np.array_equal(linear_weights.prefix_sums(4), [0.0, 1.0, 3.0, 6.0, 10.0])
        assert linear_weights.Q(4) == 10.0

    def test_growth_beyond_initial_capacity(self, linear_weights: WeightSequence) -> None:
        assert linear_weights.q(1000) == 1001.0
        assert linear_weights.Q(1000) == pytest.approx(1000 * 1001 / 2)

    @pytest.mark.parametrize(
        "descriptor,expected",
        [
            ("const", Monotonicity.CONSTANT),
            ("poly:1", Monotonicity.NON_DECREASING),
            ("stair", Monotonicity.NON_DECREASING),
            ("poly:-0.5", Monotonicity.NON_INCREASING),
            ("delta", Monotonicity.NON_INCREASING),
        ],
    )
    def test_monotonicity(self, descriptor: str, expected: Monotonicity) -> None:
        assert weight_family(descriptor).monotonicity(100) is expected

    def test_spike_is_neither(self, spike_weights: WeightSequence) -> None:
        assert spike_weights.monotonicity(100) is Monotonicity.NEITHER

    @pytest.mark.parametrize("descriptor", ["bogus", "poly", "const:1", "poly:x", "custom"])
    def test_malformed(self, descriptor: str) -> None:
        with pytest.raises(FormatError):
            weight_family(descriptor)

    def test_geometric_ratio_must_be_positive(self) -> None:
        with pytest.raises(DomainError):
            weight_family("geom:0")

    def test_geometric_overflow(self) -> None:
        q = weight_family("geom:10")
        with pytest.raises(DomainError, match="não finito"):
            q.values(400)

    def test_invalid_first_weight(self) -> None:
        with pytest.raises(DomainError, match="q_0"):
            WeightSequence.from_values([0.0, 1.0])

    def test_negative_weight(self) -> None:
        with pytest.raises(DomainError):
            WeightSequence.from_values([1.0, -1.0])

    @pytest.mark.parametrize("descriptor", ["const", "poly:1", "poly:2", "poly:-0.5", "poly:-1", "log", "geom:0.5", "delta", "stair"])
    def test_summation_by_parts_recovers_prefix_sums(self, descriptor: str) -> None:
        q = weight_family(descriptor)
        weights = q.values(1 << 12)
        for n in (1, 2, 3, 17, 100, 1000, 2049, 1 << 12):
            j = np.arange(1, n)
            by_parts = float(np.sum((weights[n - j] - weights[n - j - 1]) * j)) + weights[0] * n
            assert abs(by_parts - q.Q(n)) < 1e-9 * q.Q(n), n

    def test_custom_from_file(self, tmp_path: Path) -> None:
        path = write_weights([3.0, 2.0, 1.0], tmp_path / "w.csv")
        q = weight_family(f"custom:{path}")
        assert np.array_equal(q.values(3), [3.0, 2.0, 1.0])
        assert q.length == 3
        with pytest.raises(DomainError):
            q.values(4)

    def test_concurrent_growth_is_consistent(self) -> None:
        q = weight_family("poly:1")
        results: list[float] = []

        def worker(n: int) -> None:
            results.append(q.Q(n))

        threads = [threading.Thread(target=worker, args=(n,)) for n in (500, 5000, 50000, 5000)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(results) == sorted(n * (n + 1) / 2 for n in (500, 5000, 50000, 5000))


class TestConvolution:
    """Testes para a convolução no grupo."""

    def test_spectral_matches_naive(self, random_function: StepFunction) -> None:
        g = StepFunction.from_values(np.cos(np.arange(random_function.size)))
        assert convolve(random_function, g).allclose(naive_convolve(random_function, g), atol=1e-10)

    def test_resolution_mismatch(self) -> None:
        with pytest.raises(ResolutionError):
            convolve(StepFunction.constant(1.0, 3), StepFunction.constant(1.0, 4))

    def test_convolution_with_one_is_integral(self, random_function: StepFunction) -> None:
        result = convolve(random_function, StepFunction.constant(1.0, random_function.M))
        assert np.allclose(result.values, integrate(random_function), atol=1e-12)

    @pytest.mark.parametrize("a,b", [(3, 3), (3, 5), (0, 0), (0, 7), (12, 12)])
    def test_walsh_functions_are_orthogonal_under_convolution(self, a: int, b: int) -> None:
        result = convolve(walsh_function(a, 4), walsh_function(b, 4))
        expected = walsh_function(a, 4).values if a == b else np.zeros(16)
        assert np.allclose(result.values, expected, atol=1e-12)

    @pytest.mark.parametrize("n", range(7))
    def test_dyadic_partial_sum_is_dirichlet_convolution(self, random_function: StepFunction, n: int) -> None:
        via_kernel = convolve(random_function, dirichlet_kernel(1 << n, random_function.M))
        assert via_kernel.allclose(partial_sum(random_function, 1 << n), atol=1e-12)


class TestNorlundMeans:
    """Testes para t_n f e sigma_n f."""

    @pytest.mark.parametrize("descriptor", ["const", "poly:1", "poly:-0.5", "log", "stair"])
    @pytest.mark.parametrize("n", [1, 2, 7, 33, 64])
    def test_methods_agree(self, random_function: StepFunction, descriptor: str, n: int) -> None:
        q = weight_family(descriptor)
        results = [norlund_mean(random_function, n, q, method).values for method in MeanMethod]
        for other in results[1:]:
            assert results[0].allclose(other, atol=1e-10)

    def test_fejer_of_first_walsh(self) -> None:
        w1 = walsh_function(1, 4)
        assert fejer_mean(w1, 2).allclose(w1 / 2)

    def test_fejer_of_constant(self) -> None:
        f = StepFunction.constant(3.0, 8)
        assert fejer_mean(f, 7).allclose(f)

    def test_constant_weights_give_fejer(self, random_function: StepFunction, const_weights: WeightSequence) -> None:
        assert norlund_mean(random_function, 21, const_weights).values.allclose(fejer_mean(random_function, 21))

    def test_delta_weights_give_partial_sums(self, random_function: StepFunction) -> None:
        q = weight_family("delta")
        for n in (1, 5, 16, random_function.size):
            assert norlund_mean(random_function, n, q).values.allclose(partial_sum(random_function, n), atol=1e-12)

    def test_cesaro_table_reused_by_abel(self, random_function: StepFunction, linear_weights: WeightSequence) -> None:
        table = CesaroTable(random_function, random_function.size)
        for n in (3, 40):
            cached = norlund_mean(random_function, n, linear_weights, MeanMethod.ABEL, cache=table)
            fresh = norlund_mean(random_function, n, linear_weights, MeanMethod.ABEL)
            assert cached.values.allclose(fresh.values, atol=1e-10)
        assert table.fejer(10).allclose(fejer_mean(random_function, 10), atol=1e-12)

    def test_cesaro_table_respects_size_limit(
        self, random_function: StepFunction, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        small = AppConfig(compute=ComputeConfig(cesaro_cache_limit=16 * random_function.size))
        monkeypatch.setattr("src.means.summation.get_config", lambda: small)
        assert CesaroTable(random_function, 16).n_max == 16
        with pytest.raises(DomainError, match="excede o limite"):
            CesaroTable(random_function, 17)

    @pytest.mark.parametrize("descriptor", ["const", "poly:1", "poly:-0.5", "stair"])
    def test_method_spread_within_agreement_tolerance(self, random_function: StepFunction, descriptor: str) -> None:
        spread = method_spread(random_function, 37, weight_family(descriptor))
        assert 0.0 <= spread <= get_config().tolerance.agreement

    def test_batched_rows_match_single_means(
        self, random_function: StepFunction, decreasing_weights: WeightSequence
    ) -> None:
        orders = [1, 4, 9, 30]
        rows = batched_norlund_means(analyze(random_function).coefficients, orders, decreasing_weights)
        for n, row in zip(orders, rows, strict=True):
            expected = norlund_mean(random_function, n, decreasing_weights, MeanMethod.SPECTRAL).values
            assert np.allclose(row, expected.values, atol=1e-12)

    def test_result_metadata(self, random_function: StepFunction, linear_weights: WeightSequence) -> None:
        result = norlund_mean(random_function, 5, linear_weights, MeanMethod.PARTIAL_SUM)
        assert (result.order, result.method, result.resolution) == (5, MeanMethod.PARTIAL_SUM, random_function.resolution)

    def test_order_above_resolution(self, random_function: StepFunction, linear_weights: WeightSequence) -> None:
        with pytest.raises(DomainError):
            norlund_mean(random_function, random_function.size + 1, linear_weights)


class TestConditions:
    """Testes para a evidência das condições em horizonte finito."""

    def test_constant_weights_are_regular(self, const_weights: WeightSequence) -> None:
        report = is_regular(const_weights, 2048)
        assert report.regular
        assert report.tail_ratio == pytest.approx(1 / 2048)
        assert report.partial_sums_diverge

    def test_geometric_growth_is_not_regular(self) -> None:
        report = is_regular(weight_family("geom:2"), 256)
        assert not report.regular
        assert report.tail_ratio == pytest.approx(0.5, rel=1e-6)

    def test_moricz_siddiqi_constant_weights(self, const_weights: WeightSequence) -> None:
        report = moricz_siddiqi_condition(const_weights, 2.0, 1024)
        assert np.allclose(report.values, 1.0)
        assert report.bounded

    def test_moricz_siddiqi_fails_for_stair(self) -> None:
        report = moricz_siddiqi_condition(weight_family("stair"), 2.0, 4096)
        assert not report.bounded
        assert report.evidence.slope > 0.1

    def test_stair_tail_ratio_is_small(self) -> None:
        assert is_regular(weight_family("stair"), 4096).tail_ratio < 0.01

    def test_slowly_decreasing_weights_are_regular(self, decreasing_weights: WeightSequence) -> None:
        report = is_regular(decreasing_weights, 1000)
        assert report.regular
        assert report.eventually_decreasing

    @pytest.mark.parametrize("beta", [-1.0, -0.75, -0.5, -0.25, 0.0])
    def test_nonincreasing_ratio_bound(self, beta: float) -> None:
        report = is_regular(weight_family(f"poly:{beta}"), 4096)
        ns = np.arange(1, 4097)
        tail = ns >= 16
        assert np.all(report.ratios[tail] <= 2.0 * (1.0 - beta) / ns[tail])

    @pytest.mark.parametrize("gamma", [1.0, 2.5])
    def test_gamma_out_of_range(self, const_weights: WeightSequence, gamma: float) -> None:
        with pytest.raises(DomainError, match="gamma"):
            moricz_siddiqi_condition(const_weights, gamma, 16)

    def test_fejer_condition(self, const_weights: WeightSequence) -> None:
        assert fejer_condition(const_weights, 1024).bounded
        assert not fejer_condition(weight_family("poly:-1"), 2048).bounded

    def test_nondecreasing_condition(self, linear_weights: WeightSequence) -> None:
        report = nondecreasing_condition(linear_weights, 1024)
        assert report.bounded
        assert report.sup < 2.0

    def test_dyadic_mass(self, decreasing_weights: WeightSequence, linear_weights: WeightSequence) -> None:
        assert dyadic_mass_check(decreasing_weights, 10)
        assert not dyadic_mass_check(linear_weights, 10)

    def test_report_to_dict(self, const_weights: WeightSequence) -> None:
        data = fejer_condition(const_weights, 64).to_dict()
        assert data["condition"] == "n/Q_n"
        assert data["horizon"] == 64
