"""Persistência dos artefatos: funções escada, espectros, perfis, pesos e relatórios.

Todos os arquivos são escritos uma única vez, de forma atômica (arquivo
temporário no mesmo diretório seguido de rename). Números usam 17
dígitos significativos, de modo que reexecuções produzem bytes idênticos.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import re
import tempfile
from collections.abc import Generator, Iterable
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

import numpy as np
from numpy.typing import NDArray

from src.dyadic.functions import StepFunction
from src.dyadic.group import Resolution
from src.errors import FormatError
from src.experiments.reports import BOUND_COLUMNS, BoundReport, RateReport
from src.metrics.norms import ModulusProfile
from src.transform.walsh import Spectrum

logger = logging.getLogger(__name__)

_FUNCTION_HEADER = re.compile(r"^#\s*resolution=(\d+)\s*$")
_SPECTRUM_HEADER = re.compile(r"^#\s*resolution=(\d+)\s+kind=spectrum\s*$")
_PROFILE_HEADER = re.compile(r"^#\s*p=(\S+)\s+resolution=(\d+)\s*$")
_WEIGHTS_HEADER = "# weights"


def _fmt(value: float) -> str:
    return f"{value:.17g}"


@contextmanager
def atomic_writer(path: Path) -> Generator[TextIO, None, None]:
    """Escreve em arquivo temporário e renomeia ao final; descarta em caso de erro."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            yield handle
        os.replace(tmp_name, target)
        logger.debug("Arquivo escrito: %s", target)
    except BaseException:
        logger.error("Falha ao escrever %s; temporário descartado", target)
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def _read_lines(path: Path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as handle:
            return [line.strip() for line in handle if line.strip()]
    except OSError as exc:
        raise FormatError(f"Não foi possível ler '{path}': {exc}") from exc


def _parse_values(lines: Iterable[str], path: Path) -> NDArray[np.float64]:
    try:
        return np.array([float(line) for line in lines], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"Valor não numérico em '{path}'") from exc


def _read_sized(path: Path, header: re.Pattern[str]) -> tuple[re.Match[str], NDArray[np.float64]]:
    lines = _read_lines(path)
    if not lines:
        raise FormatError(f"Arquivo vazio: '{path}'")
    match = header.match(lines[0])
    if match is None:
        raise FormatError(f"Cabeçalho inválido em '{path}': '{lines[0]}'")
    values = _parse_values(lines[1:], path)
    return match, values


def _check_count(values: NDArray[np.float64], M: int, path: Path) -> Resolution:
    try:
        res = Resolution(M)
    except ValueError as exc:
        raise FormatError(f"Resolução inválida em '{path}': {exc}") from exc
    if values.size != res.size:
        raise FormatError(f"'{path}' tem {values.size} valores, esperado 2^{M} = {res.size}")
    return res


# ─── Funções escada e espectros ─────────────────────────────
def write_step_function(f: StepFunction, path: Path) -> Path:
    """Cabeçalho ``# resolution=M`` seguido de 2^M valores, um por linha."""
    with atomic_writer(path) as handle:
        handle.write(f"# resolution={f.M}\n")
        handle.writelines(f"{_fmt(v)}\n" for v in f.values)
    return Path(path)


def read_step_function(path: Path) -> StepFunction:
    """Lê uma função escada; número de linhas deve ser exatamente 2^M.

    Raises:
        FormatError: Cabeçalho ausente, valor inválido ou contagem errada.
    """
    match, values = _read_sized(Path(path), _FUNCTION_HEADER)
    res = _check_count(values, int(match.group(1)), Path(path))
    try:
        return StepFunction(res, values)
    except ValueError as exc:
        raise FormatError(f"Valores inválidos em '{path}': {exc}") from exc


def write_spectrum(spectrum: Spectrum, path: Path) -> Path:
    with atomic_writer(path) as handle:
        handle.write(f"# resolution={spectrum.M} kind=spectrum\n")
        handle.writelines(f"{_fmt(c)}\n" for c in spectrum.coefficients)
    return Path(path)


def read_spectrum(path: Path) -> Spectrum:
    match, values = _read_sized(Path(path), _SPECTRUM_HEADER)
    res = _check_count(values, int(match.group(1)), Path(path))
    return Spectrum(res, values)


# ─── Perfis de módulo ───────────────────────────────────────
def write_profile(profile: ModulusProfile, path: Path) -> Path:
    """Cabeçalho ``# p=<p> resolution=M`` e linhas ``k,omega``."""
    with atomic_writer(path) as handle:
        handle.write(f"# p={_fmt(profile.p)} resolution={profile.M}\n")
        handle.writelines(f"{k},{_fmt(omega)}\n" for k, omega in profile.rows())
    return Path(path)


def read_profile(path: Path) -> ModulusProfile:
    lines = _read_lines(Path(path))
    match = _PROFILE_HEADER.match(lines[0]) if lines else None
    if match is None:
        raise FormatError(f"Cabeçalho de perfil inválido em '{path}'")
    M = int(match.group(2))
    rows = [line.split(",") for line in lines[1:]]
    if len(rows) != M + 1 or any(len(row) != 2 for row in rows):
        raise FormatError(f"Perfil em '{path}' deve ter {M + 1} linhas 'k,omega'")
    try:
        omegas = np.array([float(row[1]) for row in rows])
        p = float(match.group(1))
    except ValueError as exc:
        raise FormatError(f"Valor não numérico em '{path}'") from exc
    omegas.setflags(write=False)
    return ModulusProfile(p=p, M=M, omegas=omegas)


# ─── Pesos ──────────────────────────────────────────────────
def write_weights(values: Iterable[float], path: Path) -> Path:
    with atomic_writer(path) as handle:
        handle.write(f"{_WEIGHTS_HEADER}\n")
        handle.writelines(f"{_fmt(v)}\n" for v in values)
    return Path(path)


def read_weights(path: Path) -> NDArray[np.float64]:
    """Lê q_0, q_1, ... (cabeçalho ``# weights``).

    Raises:
        FormatError: Cabeçalho ausente, valor inválido ou arquivo vazio.
    """
    lines = _read_lines(Path(path))
    if not lines or lines[0] != _WEIGHTS_HEADER:
        raise FormatError(f"Arquivo de pesos sem cabeçalho '{_WEIGHTS_HEADER}': '{path}'")
    values = _parse_values(lines[1:], Path(path))
    if values.size == 0:
        raise FormatError(f"Arquivo de pesos vazio: '{path}'")
    return values


# ─── Relatórios ─────────────────────────────────────────────
def write_bound_reports(reports: Iterable[BoundReport], path: Path) -> Path:
    with atomic_writer(path) as handle:
        writer = csv.DictWriter(handle, fieldnames=list(BOUND_COLUMNS), lineterminator="\n")
        writer.writeheader()
        count = 0
        for report in reports:
            writer.writerow(report.to_row())
            count += 1
    logger.info("%d relatórios de cota salvos em %s", count, path)
    return Path(path)


def read_bound_rows(path: Path) -> list[dict[str, str]]:
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            rows = list(csv.DictReader(handle))
    except OSError as exc:
        raise FormatError(f"Não foi possível ler '{path}': {exc}") from exc
    if rows and tuple(rows[0].keys()) != BOUND_COLUMNS:
        raise FormatError(f"Colunas inesperadas em '{path}'")
    return rows


def write_rate_report(report: RateReport, path: Path) -> Path:
    """Cabeçalho com o ajuste e linhas ``n,error``."""
    with atomic_writer(path) as handle:
        handle.write(
            f"# alpha={_fmt(report.alpha)} p={_fmt(report.p)} weights={report.weights} "
            f"slope={_fmt(report.slope)} expected={report.expected} within={str(report.within).lower()}\n"
        )
        handle.write("n,error\n")
        handle.writelines(f"{n},{_fmt(e)}\n" for n, e in zip(report.orders, report.errors, strict=True))
    return Path(path)


def write_json(payload: dict, path: Path) -> Path:
    """JSON com chaves ordenadas (saída determinística)."""
    with atomic_writer(path) as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return Path(path)


def write_text(text: str, path: Path) -> Path:
    with atomic_writer(path) as handle:
        handle.write(text)
    return Path(path)
