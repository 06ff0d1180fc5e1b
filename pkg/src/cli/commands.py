"""Subcomandos da linha de comando."""

from __future__ import annotations

import argparse
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from config.settings import AppConfig, get_config
from src.cli.svg import loglog_svg
from src.dyadic.functions import integrate
from src.errors import DomainError
from src.experiments.engine import VerificationEngine
from src.experiments.matrix import OrderRange, resolve_function
from src.experiments.rates import rate_experiment
from src.experiments.reports import TheoremId
from src.kernels.dirichlet import KernelKind, KernelMethod, KernelSpec, highest_bit, kernel
from src.means.conditions import (
    dyadic_mass_check,
    fejer_condition,
    is_regular,
    moricz_siddiqi_condition,
    nondecreasing_condition,
)
from src.means.summation import MeanMethod, fejer_mean, method_spread, norlund_mean
from src.means.weights import weight_family
from src.metrics.lipschitz import LipVariant, rate_fit
from src.metrics.norms import lp_norm
from src.storage import write_bound_reports, write_json, write_rate_report, write_step_function, write_text

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Parâmetros de uma execução, já validados."""

    subcommand: str
    M: int
    p: float
    seed: int
    orders: OrderRange | None = None
    weights: str = "const"
    function: str | None = None
    out: Path | None = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: AppConfig | None = None) -> RunConfig:
        cfg = config or get_config()
        M = args.M if args.M is not None else cfg.compute.resolution
        if not 1 <= M <= cfg.compute.max_resolution:
            raise DomainError(f"Resolução M={M} fora de [1, {cfg.compute.max_resolution}]")
        raw_orders = getattr(args, "n", None)
        options = {
            key: value
            for key, value in vars(args).items()
            if key not in {"command", "M", "p", "seed", "n", "weights", "fn", "out", "verbose", "handler"}
        }
        return cls(
            subcommand=args.command,
            M=M,
            p=args.p,
            seed=args.seed if args.seed is not None else cfg.experiment.seed,
            orders=OrderRange.parse(raw_orders) if raw_orders is not None else None,
            weights=getattr(args, "weights", None) or "const",
            function=getattr(args, "fn", None),
            out=args.out,
            options=options,
        )

    def output(self, default_name: str) -> Path:
        if self.out is not None:
            return self.out
        return get_config().output_dir / default_name

    def single_order(self) -> int:
        if self.orders is None or self.orders.start != self.orders.stop:
            raise DomainError("Informe uma única ordem com --n")
        return self.orders.start


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9.+-]+", "_", text).strip("_")


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def cmd_kernel(cfg: RunConfig) -> int:
    """Grava o núcleo em CSV e imprime int K e int |K|."""
    kind = KernelKind(cfg.options["kind"])
    n = cfg.single_order()
    weights = weight_family(cfg.weights) if kind is KernelKind.NORLUND else None
    values = kernel(KernelSpec(kind, n, weights), cfg.M, KernelMethod(cfg.options["method"]))
    suffix = f"_{_slug(cfg.weights)}" if weights is not None else ""
    path = write_step_function(values, cfg.output(f"kernel_{kind.value}{suffix}_n{n}_M{cfg.M}.csv"))
    print(f"integral={_fmt(integrate(values))}")
    print(f"integral_abs={_fmt(integrate(abs(values)))}")
    logger.info("Núcleo salvo em %s", path)
    return 0


def cmd_mean(cfg: RunConfig) -> int:
    """Grava t_n f (ou sigma_n f) e imprime ||t_n f - f||_p.

    Com ``--check`` também compara os quatro caminhos de cálculo e sai com
    código 1 se divergirem além de ``ToleranceConfig.agreement``.
    """
    if cfg.function is None:
        raise DomainError("Informe a função com --fn")
    f = resolve_function(cfg.function, cfg.M, cfg.seed)
    n = cfg.single_order()
    if cfg.options.get("fejer"):
        approx = fejer_mean(f, n)
        label = "fejer"
        q = weight_family("const")
    else:
        q = weight_family(cfg.weights)
        approx = norlund_mean(f, n, q, MeanMethod(cfg.options["method"])).values
        label = _slug(cfg.weights)
    path = write_step_function(approx, cfg.output(f"mean_{label}_{_slug(cfg.function)}_n{n}_M{cfg.M}.csv"))
    print(f"error={_fmt(lp_norm(approx - f, cfg.p))}")
    logger.info("Média salva em %s", path)
    if cfg.options.get("check"):
        spread = method_spread(f, n, q)
        tolerance = get_config().tolerance.agreement
        print(f"spread={_fmt(spread)}")
        if spread > tolerance:
            logger.error("Métodos de t_%d f divergem em %.3g (tolerância %.0e)", n, spread, tolerance)
            return 1
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    """Varre a desigualdade pedida; código 0 sse todas as células aplicáveis valem."""
    if cfg.function is None or cfg.orders is None:
        raise DomainError("verify requer --fn e --n")
    theorem = TheoremId(cfg.options["theorem"])
    f = resolve_function(cfg.function, cfg.M, cfg.seed)
    orders = cfg.orders.exponents() if theorem is TheoremId.T2 else cfg.orders.orders()
    engine = VerificationEngine()
    reports = engine.sweep(theorem, {cfg.function: f}, [cfg.p], [cfg.weights], orders, C=cfg.options.get("C"))

    out = cfg.output(f"verify_{theorem.value}_{_slug(cfg.weights)}_{_slug(cfg.function)}_M{cfg.M}.csv")
    write_bound_reports(reports, out)
    summary = engine.summarize(reports)
    json_path = cfg.options.get("json") or out.with_suffix(".json")
    write_json({"theorem": theorem.value, "M": cfg.M, "summary": summary}, json_path)

    for name, stats in summary.items():
        print(
            f"{name}: cells={stats['cells']} holds={stats['holds']} fails={stats['fails']} "
            f"unchecked={stats['unchecked']} sup_ratio={stats['sup_ratio']}"
        )
    if not engine.all_hold(reports):
        logger.error("Desigualdade %s violada em pelo menos uma célula", theorem.value)
        return 1
    return 0


def cmd_rates(cfg: RunConfig) -> int:
    """Ajusta a taxa de aproximação; SVG opcional."""
    alpha = cfg.options["alpha"]
    orders = cfg.orders or OrderRange(16, 1 << (cfg.M - 1))
    if len(orders.dyadic()) < 4:
        raise DomainError(f"Faixa {orders} contém menos de 4 ordens diádicas")
    f = resolve_function(cfg.function, cfg.M, cfg.seed) if cfg.function else None
    q = None if cfg.weights == "const" else weight_family(cfg.weights)
    report = rate_experiment(
        alpha,
        cfg.p,
        orders.rate_orders(),
        q=q,
        f=f,
        M=cfg.M,
        variant=LipVariant(cfg.options["variant"]),
        seed=cfg.seed,
    )
    out = cfg.output(f"rates_alpha{alpha:g}_{_slug(cfg.weights)}_p{cfg.p:g}_M{cfg.M}.csv")
    write_rate_report(report, out)
    svg_path = cfg.options.get("svg")
    if svg_path is not None:
        fit = rate_fit(report.orders, report.errors)
        write_text(loglog_svg(report.orders, report.errors, fit, f"alpha={alpha:g} p={cfg.p:g} {report.weights}"), svg_path)
    print(f"slope={report.slope:.6f} expected={report.expected} within={str(report.within).lower()}")
    return 0


def cmd_conditions(cfg: RunConfig) -> int:
    """Evidência em horizonte finito das hipóteses sobre os pesos."""
    q = weight_family(cfg.weights)
    horizon = cfg.options["horizon"]
    if q.length is not None and horizon >= q.length:
        raise DomainError(f"Pesos '{q.descriptor}' têm {q.length} termos; horizonte {horizon} exige {horizon + 1}")
    gamma = cfg.options["gamma"]
    regularity = is_regular(q, horizon)
    payload = {
        "weights": q.descriptor,
        "horizon": horizon,
        "monotonicity": q.monotonicity(horizon).value,
        "regularity": regularity.to_dict(),
        "moricz_siddiqi": moricz_siddiqi_condition(q, gamma, horizon).to_dict(),
        "n_over_Q": fejer_condition(q, horizon).to_dict(),
        "n_q_over_Q": nondecreasing_condition(q, horizon).to_dict(),
        "dyadic_mass": dyadic_mass_check(q, highest_bit(horizon)),
    }
    write_json(payload, cfg.output(f"conditions_{_slug(cfg.weights)}_h{horizon}.json"))
    print(f"weights={q.descriptor} monotonicity={payload['monotonicity']} regular={str(regularity.regular).lower()}")
    for key in ("moricz_siddiqi", "n_over_Q", "n_q_over_Q"):
        entry = payload[key]
        print(f"{entry['condition']}: sup={entry['sup']:.6g} slope={entry['growth_slope']:.3f} bounded={str(entry['bounded']).lower()}")
    return 0
