from src.cli.commands import RunConfig, cmd_conditions, cmd_kernel, cmd_mean, cmd_rates, cmd_verify
from src.cli.main import build_parser, main

__all__ = [
    "RunConfig",
    "build_parser",
    "cmd_conditions",
    "cmd_kernel",
    "cmd_mean",
    "cmd_rates",
    "cmd_verify",
    "main",
]
