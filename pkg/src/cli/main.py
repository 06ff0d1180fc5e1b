"""Ponto de entrada da linha de comando ``walsh-norlund``.

Códigos de saída: 0 sucesso (todas as cotas valem), 1 erro interno ou
cota violada, 2 uso ou pré-condição, 3 dados degenerados.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from config.settings import get_config
from src.cli.commands import RunConfig, cmd_conditions, cmd_kernel, cmd_mean, cmd_rates, cmd_verify
from src.errors import DegenerateDataError, DomainError, FormatError, PreconditionError, ResolutionError
from src.experiments.reports import TheoremId
from src.kernels.dirichlet import KernelKind, KernelMethod
from src.means.summation import MeanMethod
from src.metrics.lipschitz import LipVariant

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

_HANDLERS: dict[str, Callable[[RunConfig], int]] = {
    "kernel": cmd_kernel,
    "mean": cmd_mean,
    "verify": cmd_verify,
    "rates": cmd_rates,
    "conditions": cmd_conditions,
}


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--M", type=int, default=None, help="Resolução (padrão: WN_RESOLUTION)")
    parser.add_argument("--p", type=float, default=2.0, help="Expoente L^p (>= 1)")
    parser.add_argument("--seed", type=int, default=None, help="Semente (padrão: WN_SEED)")
    parser.add_argument("--out", type=Path, default=None, help="Arquivo de saída")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log em nível DEBUG")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walsh-norlund",
        description="Análise de Walsh-Fourier e verificação numérica de médias de Nörlund",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kernel = sub.add_parser("kernel", help="Núcleos de Dirichlet, Fejér e Nörlund")
    _common(kernel)
    kernel.add_argument("--kind", choices=[k.value for k in KernelKind], required=True)
    kernel.add_argument("--n", type=str, required=True, help="Ordem do núcleo")
    kernel.add_argument("--weights", type=str, default="const", help="Pesos (núcleo de Nörlund)")
    kernel.add_argument("--method", choices=[m.value for m in KernelMethod], default=KernelMethod.SPECTRAL.value)

    mean = sub.add_parser("mean", help="Médias t_n f ou sigma_n f")
    _common(mean)
    mean.add_argument("--fn", type=str, required=True, help="walsh:k | lip:a[:variant[:seed]] | const:c | file:path | random[:seed]")
    mean.add_argument("--n", type=str, required=True, help="Ordem da média")
    mean.add_argument("--weights", type=str, default="const")
    mean.add_argument("--fejer", action="store_true", help="Usa sigma_n (pesos constantes)")
    mean.add_argument("--method", choices=[m.value for m in MeanMethod], default=MeanMethod.CONVOLUTION.value)
    mean.add_argument("--check", action="store_true", help="Compara os quatro caminhos de cálculo")

    verify = sub.add_parser("verify", help="Verifica uma desigualdade sobre uma faixa de ordens")
    _common(verify)
    verify.add_argument("--theorem", choices=[t.value for t in TheoremId], required=True)
    verify.add_argument("--fn", type=str, required=True)
    verify.add_argument("--n", type=str, required=True, help="Faixa A:B[:step] (t2: ordens 2^n na faixa)")
    verify.add_argument("--weights", type=str, default="const")
    verify.add_argument("--C", type=float, default=None, help="Constante para t3/ms")
    verify.add_argument("--json", type=Path, default=None, help="Resumo JSON (padrão: ao lado do CSV)")

    rates = sub.add_parser("rates", help="Taxa de aproximação para f em lip(alpha, p)")
    _common(rates)
    rates.add_argument("--alpha", type=float, required=True)
    rates.add_argument("--n", type=str, default=None, help="Faixa A:B (potências de 2) ou A:B:step")
    rates.add_argument("--weights", type=str, default="const")
    rates.add_argument("--fn", type=str, default=None, help="Função (padrão: lip:alpha)")
    rates.add_argument("--variant", choices=[v.value for v in LipVariant], default=LipVariant.LACUNARY.value)
    rates.add_argument("--svg", type=Path, default=None, help="Gráfico log-log opcional")

    conditions = sub.add_parser("conditions", help="Evidência das condições sobre os pesos")
    _common(conditions)
    conditions.add_argument("--weights", type=str, required=True)
    conditions.add_argument("--horizon", type=int, default=2048)
    conditions.add_argument("--gamma", type=float, default=2.0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else getattr(logging, get_config().log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(name)s | %(levelname)s | %(message)s",
    )
    try:
        cfg = RunConfig.from_args(args)
        return _HANDLERS[cfg.subcommand](cfg)
    except (FormatError, DomainError, PreconditionError, ResolutionError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except DegenerateDataError as exc:
        logger.error("Dados degenerados: %s", exc)
        return EXIT_DEGENERATE
    except Exception:
        logger.exception("Erro interno")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
