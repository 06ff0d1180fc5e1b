"""Estruturas de resultado dos experimentos de verificação."""

from dataclasses import dataclass, field
from enum import Enum


class TheoremId(str, Enum):
    """Desigualdades verificáveis."""

    FEJER = "fejer"
    T1 = "t1"
    T2 = "t2"
    T3 = "t3"
    MS = "ms"


BOUND_COLUMNS = ("theorem", "n", "N", "p", "weights", "lhs", "rhs", "margin", "holds", "function", "ratio", "note")


@dataclass(frozen=True)
class BoundReport:
    """Verificação de uma desigualdade numa célula (f, p, q, n)."""

    theorem: TheoremId
    n: int
    N: int
    p: float
    weights: str
    lhs: float
    rhs: float
    holds: bool | None  # None: sem constante para comparar (t3/ms)
    function: str = ""
    ratio: float | None = None
    note: str = ""
    condition_bounded: bool | None = None

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def key(self) -> tuple:
        return (self.theorem.value, self.function, self.p, self.weights, self.n)

    def to_row(self) -> dict[str, str]:
        return {
            "theorem": self.theorem.value,
            "n": str(self.n),
            "N": str(self.N),
            "p": _fmt(self.p),
            "weights": self.weights,
            "lhs": _fmt(self.lhs),
            "rhs": _fmt(self.rhs),
            "margin": _fmt(self.margin),
            "holds": "" if self.holds is None else str(self.holds).lower(),
            "function": self.function,
            "ratio": "" if self.ratio is None else _fmt(self.ratio),
            "note": self.note,
        }

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "n": self.n,
            "N": self.N,
            "p": self.p,
            "weights": self.weights,
            "function": self.function,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "ratio": self.ratio,
            "note": self.note,
            "condition_bounded": self.condition_bounded,
        }


@dataclass(frozen=True)
class RateReport:
    """Taxa de aproximação ||t_n f - f||_p ajustada em escala log-log."""

    alpha: float
    p: float
    weights: str
    orders: list[int]
    errors: list[float]
    slope: float
    intercept: float
    r2: float
    expected: str
    expected_slope: float
    within: bool
    dropped: list[int] = field(default_factory=list)
    log_band: float | None = None

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "p": self.p,
            "weights": self.weights,
            "orders": list(self.orders),
            "errors": list(self.errors),
            "slope": self.slope,
            "intercept": self.intercept,
            "r2": self.r2,
            "expected": self.expected,
            "expected_slope": self.expected_slope,
            "within": self.within,
            "dropped": list(self.dropped),
            "log_band": self.log_band,
        }


@dataclass(frozen=True)
class SaturationReport:
    """Produtos 2^n ||sigma_{2^n} f - f||_p por profundidade."""

    p: float
    depths: list[int]
    products: list[float]
    constant: bool
    bounded_away_from_zero: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "depths": list(self.depths),
            "products": list(self.products),
            "constant": self.constant,
            "bounded_away_from_zero": self.bounded_away_from_zero,
        }


@dataclass(frozen=True)
class ConvergenceReport:
    """Envelope monótono dos erros ||t_n f - f||_p ao longo das ordens."""

    p: float
    weights: str
    orders: list[int]
    errors: list[float]
    envelope: list[float]
    top_quartile_max: float
    converging: bool
    hypothesis: str
    hypothesis_bounded: bool | None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "weights": self.weights,
            "orders": list(self.orders),
            "errors": list(self.errors),
            "envelope": list(self.envelope),
            "top_quartile_max": self.top_quartile_max,
            "converging": self.converging,
            "hypothesis": self.hypothesis,
            "hypothesis_bounded": self.hypothesis_bounded,
        }


@dataclass(frozen=True)
class BoundednessReport:
    """sup ||sigma_n f||_p / ||f||_p, limitado por sup int |K_n| <= 2."""

    p: float
    orders: list[int]
    sup_ratio: float
    holds: bool

    def to_dict(self) -> dict:
        return {"p": self.p, "orders": list(self.orders), "sup_ratio": self.sup_ratio, "holds": self.holds}


def _fmt(value: float) -> str:
    return f"{value:.17g}"
