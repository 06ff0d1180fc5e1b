"""Testes para os núcleos de Dirichlet, Fejér e Nörlund."""

import numpy as np
import pytest

from src.dyadic.functions import StepFunction, integrate
from src.errors import DomainError
from src.kernels import (
    KernelCache,
    KernelKind,
    KernelMethod,
    KernelSpec,
    dirichlet_kernel,
    fejer_closed_form,
    fejer_kernel,
    highest_bit,
    iter_dirichlet_kernels,
    iter_fejer_kernels,
    kernel,
    norlund_kernel,
    norlund_kernel_dyadic,
    norlund_multiplier,
    norlund_multipliers,
)
from src.means.weights import WeightSequence, weight_family
from src.transform.walsh import walsh_function


class TestHighestBit:
    """Testes para |n|."""

    @pytest.mark.parametrize("n,expected", [(1, 0), (2, 1), (3, 1), (96, 6), (1024, 10), (1023, 9)])
    def test_values(self, n: int, expected: int) -> None:
        assert highest_bit(n) == expected

    def test_zero_rejected(self) -> None:
        with pytest.raises(DomainError):
            highest_bit(0)


class TestDirichletKernel:
    """Testes para D_n."""

    @pytest.mark.parametrize("m", range(9))
    def test_dyadic_closed_form(self, m: int) -> None:
        d = dirichlet_kernel(1 << m, 8)
        residues = np.arange(256) & ((1 << m) - 1)
        expected = np.where(residues == 0, float(1 << m), 0.0)
        assert np.max(np.abs(d.values - expected)) < 1e-12

    def test_reflection_identity(self) -> None:
        M = 6
        table = dict(iter_dirichlet_kernels(M, 1 << M))
        for n in range(M + 1):
            top = 1 << n
            twist = walsh_function(top - 1, M).values
            for m in range(top):
                assert np.max(np.abs(table[top - m] - (table[top] - twist * table[m]))) < 1e-12

    @pytest.mark.parametrize("n", [1, 5, 17, 64])
    def test_integral_is_one(self, n: int) -> None:
        assert integrate(dirichlet_kernel(n, 7)) == pytest.approx(1.0, abs=1e-12)

    def test_direct_matches_spectral(self) -> None:
        for n in (3, 10, 33):
            spectral = kernel(KernelSpec(KernelKind.DIRICHLET, n), 7, KernelMethod.SPECTRAL, cache=None)
            direct = kernel(KernelSpec(KernelKind.DIRICHLET, n), 7, KernelMethod.DIRECT, cache=None)
            assert spectral.allclose(direct, atol=1e-12)


class TestFejerKernel:
    """Testes para K_n."""

    @pytest.mark.parametrize("m", range(9))
    def test_dyadic_closed_form(self, m: int) -> None:
        assert fejer_kernel(1 << m, 8).allclose(fejer_closed_form(m, 8), atol=1e-12)

    def test_integral_and_l1_bound(self) -> None:
        for _, k in iter_fejer_kernels(8, 256):
            assert abs(k.mean() - 1.0) < 1e-12
            assert np.abs(k).mean() <= 2.0 + 1e-12

    def test_pointwise_dyadic_domination(self) -> None:
        M = 8
        dyadic = {m: np.abs(fejer_closed_form(m, M).values) for m in range(M + 1)}
        for n, k in iter_fejer_kernels(M, 128):
            top = highest_bit(n)
            bound = 3.0 * sum((1 << l) * dyadic[l] for l in range(top + 1))
            assert np.all(n * np.abs(k) <= bound + 1e-9)

    def test_direct_matches_spectral(self) -> None:
        spectral = kernel(KernelSpec(KernelKind.FEJER, 100), 8, KernelMethod.SPECTRAL, cache=None)
        direct = kernel(KernelSpec(KernelKind.FEJER, 100), 8, KernelMethod.DIRECT, cache=None)
        assert spectral.allclose(direct, atol=1e-10)

    def test_closed_form_exponent_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            fejer_closed_form(9, 8)


class TestNorlundKernel:
    """Testes para F_n."""

    def test_constant_weights_give_fejer(self, const_weights: WeightSequence) -> None:
        for n in (1, 7, 50):
            assert norlund_kernel(const_weights, n, 7).allclose(fejer_kernel(n, 7), atol=1e-12)

    @pytest.mark.parametrize("descriptor", ["poly:1", "poly:-0.5", "log", "stair"])
    def test_integral_is_one(self, descriptor: str) -> None:
        assert integrate(norlund_kernel(weight_family(descriptor), 16, 8)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("descriptor", ["poly:1", "poly:-0.5", "geom:0.9"])
    def test_dyadic_decomposition_agrees(self, descriptor: str) -> None:
        q = weight_family(descriptor)
        for n in range(7):
            assert norlund_kernel_dyadic(q, n, 7).allclose(norlund_kernel(q, 1 << n, 7), atol=1e-10)

    def test_direct_matches_spectral(self, linear_weights: WeightSequence) -> None:
        spec = KernelSpec(KernelKind.NORLUND, 45, linear_weights)
        spectral = kernel(spec, 7, KernelMethod.SPECTRAL, cache=None)
        direct = kernel(spec, 7, KernelMethod.DIRECT, cache=None)
        assert spectral.allclose(direct, atol=1e-10)

    def test_delta_weights_give_dirichlet(self) -> None:
        assert norlund_kernel(weight_family("delta"), 13, 6).allclose(dirichlet_kernel(13, 6), atol=1e-12)

    def test_missing_weights(self) -> None:
        with pytest.raises(DomainError, match="pesos"):
            KernelSpec(KernelKind.NORLUND, 4)


class TestKernelCache:
    """Testes para o cache de núcleos."""

    def test_hit_returns_same_object(self) -> None:
        cache = KernelCache()
        spec = KernelSpec(KernelKind.FEJER, 9)
        first = cache.get(spec, 6, KernelMethod.SPECTRAL)
        second = cache.get(spec, 6, KernelMethod.SPECTRAL)
        assert first is second
        assert (cache.hits, cache.misses) == (1, 1)

    def test_cached_values_are_read_only(self) -> None:
        cached = KernelCache().get(KernelSpec(KernelKind.DIRICHLET, 5), 5, KernelMethod.SPECTRAL)
        assert isinstance(cached, StepFunction)
        assert not cached.values.flags.writeable

    def test_distinct_weights_are_distinct_entries(self) -> None:
        cache = KernelCache()
        a = cache.get(KernelSpec(KernelKind.NORLUND, 8, weight_family("poly:1")), 5, KernelMethod.SPECTRAL)
        b = cache.get(KernelSpec(KernelKind.NORLUND, 8, weight_family("poly:2")), 5, KernelMethod.SPECTRAL)
        assert not a.allclose(b)
        assert cache.misses == 2

    def test_eviction_keeps_bound(self) -> None:
        cache = KernelCache(max_entries=2)
        for n in range(1, 6):
            cache.get(KernelSpec(KernelKind.DIRICHLET, n), 4, KernelMethod.SPECTRAL)
        assert len(cache._entries) == 2

    def test_byte_budget_bounds_memory(self) -> None:
        row = (1 << 6) * 8
        cache = KernelCache(max_bytes=3 * row)
        for n in range(1, 10):
            cache.get(KernelSpec(KernelKind.FEJER, n), 6, KernelMethod.SPECTRAL)
            assert cache.nbytes <= 3 * row
        assert len(cache._entries) == 3
        cache.clear()
        assert cache.nbytes == 0

    def test_kernel_larger_than_budget_is_not_stored(self) -> None:
        cache = KernelCache(max_bytes=100)
        value = cache.get(KernelSpec(KernelKind.DIRICHLET, 4), 6, KernelMethod.SPECTRAL)
        assert value.allclose(kernel(KernelSpec(KernelKind.DIRICHLET, 4), 6, cache=None))
        assert cache.nbytes == 0
        assert len(cache._entries) == 0

    @pytest.mark.parametrize("descriptor", ["const", "poly:1", "poly:-0.5", "stair"])
    def test_multiplier_rows_match_single_multipliers(self, descriptor: str) -> None:
        q = weight_family(descriptor)
        orders = [1, 2, 5, 31, 64]
        rows = norlund_multipliers(q, orders, 64)
        for n, row in zip(orders, rows, strict=True):
            assert np.array_equal(row, norlund_multiplier(q, n, 64))

    def test_multiplier_rows_reject_orders_out_of_range(self, const_weights: WeightSequence) -> None:
        with pytest.raises(DomainError):
            norlund_multipliers(const_weights, [0, 3], 8)
        with pytest.raises(DomainError):
            norlund_multipliers(const_weights, [9], 8)
        assert norlund_multipliers(const_weights, [], 8).shape == (0, 8)

    def test_zero_order_rejected(self) -> None:
        with pytest.raises(DomainError):
            KernelSpec(KernelKind.DIRICHLET, 0)

    def test_order_above_resolution(self) -> None:
        with pytest.raises(DomainError):
            kernel(KernelSpec(KernelKind.DIRICHLET, 65), 6)
