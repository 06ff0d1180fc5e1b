"""Testes para a transformada de Walsh-Paley."""

import numpy as np
import pytest

from src.dyadic.functions import StepFunction, integrate
from src.dyadic.group import Resolution
from src.errors import DomainError, ResolutionError
from src.transform import (
    Spectrum,
    analyze,
    fwht,
    naive_analyze,
    partial_sum,
    rademacher,
    synthesize,
    walsh_function,
)


class TestFwht:
    """Testes para a borboleta rápida."""

    def test_matches_naive_oracle(self, random_function: StepFunction) -> None:
        assert np.allclose(analyze(random_function).coefficients, naive_analyze(random_function).coefficients, atol=1e-12)

    def test_batched_rows_match_single_rows(self) -> None:
        rows = np.random.default_rng(7).standard_normal((5, 32))
        batched = fwht(rows)
        for row, expected in zip(rows, batched, strict=True):
            assert np.array_equal(fwht(row), expected)

    def test_involution_up_to_scale(self) -> None:
        values = np.random.default_rng(3).standard_normal(64)
        assert np.allclose(fwht(fwht(values)) / 64, values, atol=1e-12)

    def test_non_power_of_two(self) -> None:
        with pytest.raises(ResolutionError):
            fwht(np.ones(6))

    def test_does_not_mutate_input(self) -> None:
        values = np.arange(8.0)
        fwht(values)
        assert np.array_equal(values, np.arange(8.0))


class TestWalshFunctions:
    """Testes para w_n e r_k."""

    def test_walsh_zero_is_one(self) -> None:
        assert np.array_equal(walsh_function(0, 5).values, np.ones(32))

    def test_rademacher_is_coordinate_sign(self) -> None:
        r2 = rademacher(2, 4)
        expected = [1.0 if (j >> 2) & 1 == 0 else -1.0 for j in range(16)]
        assert np.array_equal(r2.values, expected)
        assert np.array_equal(r2.values, walsh_function(4, 4).values)

    @pytest.mark.parametrize("n,m", [(3, 5), (12, 7), (0, 9), (15, 15)])
    def test_product_is_xor(self, n: int, m: int) -> None:
        product = walsh_function(n, 4) * walsh_function(m, 4)
        assert np.array_equal(product.values, walsh_function(n ^ m, 4).values)

    def test_orthonormality(self) -> None:
        for n in range(16):
            for m in range(16):
                inner = integrate(walsh_function(n, 4) * walsh_function(m, 4))
                assert inner == (1.0 if n == m else 0.0)

    def test_frequency_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            walsh_function(16, 4)

    def test_rademacher_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            rademacher(4, 4)


class TestAnalysisSynthesis:
    """Testes para análise, síntese e somas parciais."""

    def test_walsh_spectrum_is_unit(self) -> None:
        spectrum = analyze(walsh_function(11, 5))
        expected = np.zeros(32)
        expected[11] = 1.0
        assert np.array_equal(spectrum.coefficients, expected)

    def test_synthesis_recovers_function(self, random_function: StepFunction) -> None:
        assert synthesize(analyze(random_function)).allclose(random_function, atol=1e-12)

    def test_analysis_is_linear(self, random_function: StepFunction) -> None:
        g = StepFunction.from_values(np.sin(np.arange(random_function.size)))
        combined = analyze(2.5 * random_function - 0.75 * g).coefficients
        separate = 2.5 * analyze(random_function).coefficients - 0.75 * analyze(g).coefficients
        assert np.allclose(combined, separate, atol=1e-12)

    def test_round_trip_and_parseval_at_high_resolution(self) -> None:
        rng = np.random.default_rng(16)
        f = StepFunction.from_values(rng.uniform(-1.0, 1.0, 1 << 16))
        spectrum = analyze(f)
        assert np.max(np.abs(synthesize(spectrum).values - f.values)) < 1e-11
        assert abs(integrate(f * f) - spectrum.energy()) < 1e-11

    def test_parseval(self, random_function: StepFunction) -> None:
        assert analyze(random_function).energy() == pytest.approx(integrate(random_function * random_function))

    def test_partial_sum_zero(self, random_function: StepFunction) -> None:
        assert np.array_equal(partial_sum(random_function, 0).values, np.zeros(random_function.size))

    def test_partial_sum_full(self, random_function: StepFunction) -> None:
        assert partial_sum(random_function, random_function.size) is random_function

    def test_dyadic_partial_sum_is_interval_average(self, random_function: StepFunction) -> None:
        depth = 3
        s = partial_sum(random_function, 1 << depth)
        residues = np.arange(random_function.size) & ((1 << depth) - 1)
        for j in range(random_function.size):
            expected = random_function.values[residues == residues[j]].mean()
            assert s.values[j] == pytest.approx(expected, abs=1e-12)

    def test_partial_sum_out_of_range(self, random_function: StepFunction) -> None:
        with pytest.raises(DomainError):
            partial_sum(random_function, random_function.size + 1)

    def test_truncate(self) -> None:
        spectrum = Spectrum(Resolution(3), np.arange(8.0))
        assert np.array_equal(spectrum.truncate(3).coefficients, [0.0, 1.0, 2.0, 0, 0, 0, 0, 0])

    def test_spectrum_length_mismatch(self) -> None:
        with pytest.raises(ResolutionError):
            Spectrum(Resolution(3), np.ones(4))
