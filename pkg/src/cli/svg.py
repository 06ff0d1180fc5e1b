"""Gráfico log-log mínimo em SVG (eixos, pontos e reta ajustada)."""

from __future__ import annotations

import math
from collections.abc import Sequence

from src.errors import DegenerateDataError
from src.metrics.lipschitz import FitResult

WIDTH = 640
HEIGHT = 420
MARGIN = 60


def _span(values: Sequence[float]) -> tuple[float, float]:
    low, high = min(values), max(values)
    if high == low:
        return low - 0.5, high + 0.5
    return low, high


def loglog_svg(xs: Sequence[float], ys: Sequence[float], fit: FitResult | None = None, title: str = "") -> str:
    """Erro contra n em escala log2 x log2.

    Raises:
        DegenerateDataError: Sem pontos positivos para desenhar.
    """
    points = [(math.log2(x), math.log2(y)) for x, y in zip(xs, ys, strict=True) if x > 0 and y > 0]
    if not points:
        raise DegenerateDataError("Sem pontos positivos para o gráfico")
    x_low, x_high = _span([p[0] for p in points])
    y_low, y_high = _span([p[1] for p in points])
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def sx(v: float) -> float:
        return MARGIN + (v - x_low) / (x_high - x_low) * plot_w

    def sy(v: float) -> float:
        return HEIGHT - MARGIN - (v - y_low) / (y_high - y_low) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.2f}" y="{MARGIN / 2:.2f}" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    for tick in range(math.ceil(x_low), math.floor(x_high) + 1):
        x = sx(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{HEIGHT - MARGIN}" x2="{x:.2f}" y2="{HEIGHT - MARGIN + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{x:.2f}" y="{HEIGHT - MARGIN + 20}" text-anchor="middle" font-size="11">2^{tick}</text>'
        )
    for tick in range(math.ceil(y_low), math.floor(y_high) + 1):
        y = sy(tick)
        parts.append(f'<line x1="{MARGIN - 5}" y1="{y:.2f}" x2="{MARGIN}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="11">2^{tick}</text>')
    parts.extend(f'<circle cx="{sx(lx):.2f}" cy="{sy(ly):.2f}" r="3" fill="steelblue"/>' for lx, ly in points)
    if fit is not None:
        y0, y1 = fit.slope * x_low + fit.intercept, fit.slope * x_high + fit.intercept
        parts.append(
            f'<line x1="{sx(x_low):.2f}" y1="{sy(y0):.2f}" x2="{sx(x_high):.2f}" y2="{sy(y1):.2f}" '
            'stroke="firebrick" stroke-dasharray="6 4"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN}" y="{MARGIN + 14}" text-anchor="end" font-size="12">'
            f"slope = {fit.slope:.3f}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
