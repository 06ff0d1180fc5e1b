"""Experimentos de taxa de aproximação, saturação e convergência."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence

import numpy as np
from numpy.typing import NDArray

from config.settings import get_config
from src.dyadic.functions import StepFunction
from src.errors import DegenerateDataError, DomainError
from src.experiments.reports import BoundednessReport, ConvergenceReport, RateReport, SaturationReport
from src.means.conditions import fejer_condition, nondecreasing_condition
from src.means.summation import batched_norlund_means
from src.means.weights import WeightSequence, weight_family
from src.metrics.lipschitz import LipVariant, lip_generator, rate_fit
from src.metrics.norms import lp_norm, norms_of_rows
from src.transform.walsh import analyze

logger = logging.getLogger(__name__)


def _fejer_weights() -> WeightSequence:
    return weight_family("const")


def _check_orders(f: StepFunction, orders: Sequence[int]) -> None:
    for n in orders:
        if not 1 <= n <= f.size:
            raise DomainError(f"Ordem n={n} fora de [1, 2^{f.M}]")


def _mean_chunks(
    f: StepFunction, orders: Sequence[int], q: WeightSequence | None
) -> Iterator[tuple[int, NDArray[np.float64]]]:
    """Gera (início, linhas t_n f) em lotes de ``batch_rows`` ordens."""
    weights = _fejer_weights() if q is None else q
    coefficients = analyze(f).coefficients
    batch = get_config().compute.batch_rows
    for start in range(0, len(orders), batch):
        yield start, batched_norlund_means(coefficients, list(orders[start : start + batch]), weights)


def mean_rows(f: StepFunction, orders: Sequence[int], q: WeightSequence | None = None) -> NDArray[np.float64]:
    """Linhas t_n f (sigma_n f se q for None) para as ordens dadas, em lotes."""
    _check_orders(f, orders)
    rows = np.empty((len(orders), f.size))
    for start, chunk in _mean_chunks(f, orders, q):
        rows[start : start + chunk.shape[0]] = chunk
    return rows


def approximation_errors(
    f: StepFunction, p: float, orders: Sequence[int], q: WeightSequence | None = None
) -> NDArray[np.float64]:
    """||t_n f - f||_p para cada ordem."""
    return approximation_errors_by_p(f, [p], orders, q)[p]


def approximation_errors_by_p(
    f: StepFunction, ps: Sequence[float], orders: Sequence[int], q: WeightSequence | None = None
) -> dict[float, NDArray[np.float64]]:
    """||t_n f - f||_p para cada p e cada ordem; as linhas t_n f são calculadas uma vez."""
    _check_orders(f, orders)
    errors = {p: np.empty(len(orders)) for p in ps}
    for start, chunk in _mean_chunks(f, orders, q):
        chunk -= f.values[None, :]
        for p in ps:
            errors[p][start : start + chunk.shape[0]] = norms_of_rows(chunk, p)
    return errors


def _regime(alpha: float) -> tuple[str, float]:
    if alpha < 1:
        return "n^-alpha", -alpha
    if alpha == 1:
        return "n^-1 log n", -1.0
    return "n^-1", -1.0


def rate_experiment(
    alpha: float,
    p: float,
    orders: Sequence[int],
    q: WeightSequence | None = None,
    f: StepFunction | None = None,
    M: int | None = None,
    variant: LipVariant | str = LipVariant.LACUNARY,
    seed: int = 0,
) -> RateReport:
    """Ajusta a taxa log-log de ||t_n f - f||_p e compara com o regime esperado.

    O regime para f em lip(alpha, p) é n^{-alpha} (alpha < 1), n^{-1} log n
    (alpha = 1) ou n^{-1} (alpha > 1). Para alpha = 1 a verificação é a
    faixa de erro * n / log2 n na metade superior das ordens.

    Raises:
        DomainError: Ordens fora de [2, 2^{M-1}].
        DegenerateDataError: Menos de 3 pontos após descartar erros abaixo do piso.
    """
    cfg = get_config()
    if f is None:
        f = lip_generator(alpha, M if M is not None else cfg.compute.resolution, variant, seed)
    ns = sorted(set(orders))
    top = 1 << (f.M - 1)
    if not ns or ns[0] < 2 or ns[-1] > top:
        raise DomainError(f"Ordens devem estar em [2, {top}]")

    errors = approximation_errors(f, p, ns, q)
    floor = cfg.tolerance.underflow
    keep = errors >= floor
    dropped = [n for n, ok in zip(ns, keep, strict=True) if not ok]
    if dropped:
        logger.warning("%d ordens descartadas por erro abaixo de %.0e", len(dropped), floor)
    kept_orders = np.asarray(ns)[keep]
    kept_errors = errors[keep]
    if kept_orders.size < 3:
        raise DegenerateDataError(f"Apenas {kept_orders.size} pontos utilizáveis para o ajuste de taxa")

    fit = rate_fit(kept_orders, kept_errors)
    expected, expected_slope = _regime(alpha)
    log_band: float | None = None
    if alpha == 1:
        upper = kept_orders >= np.median(kept_orders)
        scaled = kept_errors[upper] * kept_orders[upper] / np.log2(kept_orders[upper])
        log_band = float(np.max(scaled) / np.min(scaled))
        within = log_band <= cfg.experiment.log_band_factor
    else:
        within = abs(fit.slope - expected_slope) <= cfg.experiment.slope_tolerance
    logger.info("Taxa alpha=%s p=%s: inclinação %.3f (esperado %s)", alpha, p, fit.slope, expected)
    return RateReport(
        alpha=alpha,
        p=p,
        weights="const" if q is None else q.descriptor,
        orders=[int(n) for n in kept_orders],
        errors=[float(e) for e in kept_errors],
        slope=fit.slope,
        intercept=fit.intercept,
        r2=fit.r2,
        expected=expected,
        expected_slope=expected_slope,
        within=within,
        dropped=dropped,
        log_band=log_band,
    )


def saturation_check(f: StepFunction, p: float, depths: Sequence[int]) -> SaturationReport:
    """Produtos 2^n ||sigma_{2^n} f - f||_p.

    Constantes dão produtos nulos; para f não constante o relatório indica
    se os produtos ficam afastados de zero.
    """
    ns = sorted(set(depths))
    if not ns or ns[0] < 0 or ns[-1] >= f.M:
        raise DomainError(f"Profundidades devem estar em [0, {f.M - 1}]")
    errors = approximation_errors(f, p, [1 << n for n in ns])
    products = np.exp2(ns) * errors
    floor = get_config().tolerance.underflow
    constant = bool(np.all(products <= floor))
    return SaturationReport(
        p=p,
        depths=ns,
        products=[float(v) for v in products],
        constant=constant,
        bounded_away_from_zero=not constant and float(np.min(products)) > floor,
    )


def convergence_check(
    f: StepFunction, p: float, orders: Sequence[int], q: WeightSequence | None = None
) -> ConvergenceReport:
    """Envelope monótono (máximo das caudas) dos erros ao longo das ordens.

    A hipótese do corolário correspondente à classe de q é reportada,
    não assumida.
    """
    ns = sorted(set(orders))
    if not ns:
        raise DomainError("Faixa de ordens vazia")
    cfg = get_config()
    errors = approximation_errors(f, p, ns, q)
    envelope = np.maximum.accumulate(errors[::-1])[::-1]
    quartile = errors[-max(1, len(ns) // 4) :]
    floor = cfg.tolerance.underflow
    converging = bool(envelope[-1] <= floor or envelope[-1] <= cfg.experiment.convergence_ratio * envelope[0])

    hypothesis, bounded = "fejer", True
    if q is not None:
        shape = q.monotonicity(ns[-1])
        if shape.is_non_decreasing:
            report = nondecreasing_condition(q, max(ns[-1], 16))
            hypothesis, bounded = report.name, report.bounded
        elif shape.is_non_increasing:
            report = fejer_condition(q, max(ns[-1], 16))
            hypothesis, bounded = report.name, report.bounded
        else:
            hypothesis, bounded = "none", None
    return ConvergenceReport(
        p=p,
        weights="const" if q is None else q.descriptor,
        orders=ns,
        errors=[float(e) for e in errors],
        envelope=[float(e) for e in envelope],
        top_quartile_max=float(np.max(quartile)),
        converging=converging,
        hypothesis=hypothesis,
        hypothesis_bounded=bounded,
    )


def fejer_boundedness(f: StepFunction, p: float, orders: Sequence[int]) -> BoundednessReport:
    """sup_n ||sigma_n f||_p / ||f||_p <= 2."""
    ns = sorted(set(orders))
    if not ns:
        raise DomainError("Faixa de ordens vazia")
    base = lp_norm(f, p)
    if base == 0.0:
        return BoundednessReport(p=p, orders=ns, sup_ratio=0.0, holds=True)
    ratio = float(np.max(norms_of_rows(mean_rows(f, ns), p))) / base
    return BoundednessReport(p=p, orders=ns, sup_ratio=ratio, holds=ratio <= 2.0 + 1e-12)
