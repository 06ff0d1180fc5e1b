"""Verificação numérica das desigualdades de aproximação por médias de Nörlund.

Cada verificação compara ||t_n f - f||_p (lado esquerdo) com uma soma
ponderada do módulo de continuidade omega_p(2^{-k}, f) (lado direito).
As funções ``*_bound`` recebem o lado esquerdo já calculado e o perfil
de módulo, para que varreduras reaproveitem ambos.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from config.settings import get_config
from src.dyadic.functions import StepFunction
from src.errors import DomainError, PreconditionError
from src.experiments.reports import BoundReport, TheoremId
from src.kernels.dirichlet import highest_bit
from src.means.conditions import fejer_condition
from src.means.summation import fejer_mean, norlund_mean
from src.means.weights import Monotonicity, WeightSequence
from src.metrics.norms import ModulusProfile, lp_norm, modulus_profile

logger = logging.getLogger(__name__)

FEJER_CONSTANT = 3.0
NONDECREASING_SUM_CONSTANT = 18.0
NONDECREASING_TAIL_CONSTANT = 12.0
DYADIC_CONSTANT = 3.0


def _holds(lhs: float, rhs: float) -> bool:
    return rhs - lhs >= -get_config().tolerance.holds


def _profile(f: StepFunction, p: float, profile: ModulusProfile | None) -> ModulusProfile:
    if profile is None:
        return modulus_profile(f, p)
    if profile.M != f.M or profile.p != p:
        raise DomainError(f"Perfil (p={profile.p}, M={profile.M}) não corresponde a (p={p}, M={f.M})")
    return profile


def _check_inner_order(n: int, M: int, minimum: int = 1) -> int:
    if not minimum <= n <= 1 << M:
        raise DomainError(f"Ordem n={n} fora de [{minimum}, 2^{M}]")
    N = highest_bit(n)
    if N >= M:
        raise DomainError(f"Ordem n={n} exige N={N} < M={M}")
    return N


def approximation_error(f: StepFunction, p: float, n: int, q: WeightSequence | None = None) -> float:
    """||t_n f - f||_p (ou ||sigma_n f - f||_p se q for None)."""
    if q is None:
        approx = fejer_mean(f, n)
    else:
        approx = norlund_mean(f, n, q).values
    return lp_norm(approx - f, p)


# ─── Estimativa de Fejér ─────────────────────────────────────
def fejer_bound(lhs: float, profile: ModulusProfile, n: int, function: str = "") -> BoundReport:
    """3 sum_{s<=N} 2^{s-N} omega_s, com 2^N <= n < 2^{N+1}."""
    N = _check_inner_order(n, profile.M, minimum=2)
    s = np.arange(N + 1)
    rhs = FEJER_CONSTANT * float(np.sum(np.exp2(s - N) * profile.omegas[: N + 1]))
    return BoundReport(
        theorem=TheoremId.FEJER,
        n=n,
        N=N,
        p=profile.p,
        weights="const",
        lhs=lhs,
        rhs=rhs,
        holds=_holds(lhs, rhs),
        function=function,
        ratio=lhs / rhs if rhs > 0 else None,
    )


def verify_fejer_estimate(
    f: StepFunction, p: float, n: int, profile: ModulusProfile | None = None, function: str = ""
) -> BoundReport:
    """||sigma_n f - f||_p <= 3 sum_{s<=N} 2^{s-N} omega_p(2^{-s}, f).

    Raises:
        DomainError: n < 2 ou N >= M.
    """
    _check_inner_order(n, f.M, minimum=2)
    return fejer_bound(approximation_error(f, p, n), _profile(f, p, profile), n, function)


# ─── Pesos não decrescentes ─────────────────────────────────
def _require(q: WeightSequence, n: int, non_decreasing: bool) -> Monotonicity:
    shape = q.monotonicity(n)
    ok = shape.is_non_decreasing if non_decreasing else shape.is_non_increasing
    if not ok:
        wanted = "não decrescentes" if non_decreasing else "não crescentes"
        raise PreconditionError(f"Pesos '{q.descriptor}' não são {wanted} em [0, {n}] ({shape.value})")
    return shape


def theorem1_bound(lhs: float, profile: ModulusProfile, q: WeightSequence, n: int, function: str = "") -> BoundReport:
    """(18/Q_n) sum_{i<N} 2^i q_{n-2^i} omega_i + 12 omega_N."""
    N = _check_inner_order(n, profile.M)
    _require(q, n, non_decreasing=True)
    weights = q.values(n + 1)
    i = np.arange(N)
    total = float(np.sum(np.exp2(i) * weights[n - (1 << i)] * profile.omegas[:N]))
    rhs = NONDECREASING_SUM_CONSTANT * total / q.Q(n) + NONDECREASING_TAIL_CONSTANT * profile.omega(N)
    return BoundReport(
        theorem=TheoremId.T1,
        n=n,
        N=N,
        p=profile.p,
        weights=q.descriptor,
        lhs=lhs,
        rhs=rhs,
        holds=_holds(lhs, rhs),
        function=function,
        ratio=lhs / rhs if rhs > 0 else None,
    )


def verify_theorem1(
    f: StepFunction,
    p: float,
    n: int,
    q: WeightSequence,
    profile: ModulusProfile | None = None,
    function: str = "",
) -> BoundReport:
    """Estimativa para pesos não decrescentes.

    Raises:
        PreconditionError: q não é não decrescente em [0, n].
        DomainError: N >= M.
    """
    _check_inner_order(n, f.M)
    _require(q, n, non_decreasing=True)
    return theorem1_bound(approximation_error(f, p, n, q), _profile(f, p, profile), q, n, function)


# ─── Pesos não crescentes, ordens diádicas ──────────────────
def theorem2_bound(
    lhs: float, profile: ModulusProfile, q: WeightSequence, exponent: int, function: str = ""
) -> BoundReport:
    """sum_{s<n} 2^{s-n} omega_s + 3 sum_{s<n} (n-s) 2^{s-n} q_{2^s}/q_{2^n} omega_s + 3 omega_n."""
    if not 0 <= exponent < profile.M:
        raise DomainError(f"Expoente n={exponent} fora de [0, {profile.M - 1}]")
    order = 1 << exponent
    _require(q, order, non_decreasing=False)
    top = q.q(order)
    if top == 0.0:
        raise PreconditionError(f"q_{{2^{exponent}}} = 0 para '{q.descriptor}': cota indefinida")
    s = np.arange(exponent)
    omegas = profile.omegas[:exponent]
    scale = np.exp2(s - exponent)
    dyadic_weights = np.array([q.q(1 << int(k)) for k in s])
    first = float(np.sum(scale * omegas))
    second = float(np.sum((exponent - s) * scale * dyadic_weights / top * omegas))
    rhs = first + DYADIC_CONSTANT * second + DYADIC_CONSTANT * profile.omega(exponent)
    return BoundReport(
        theorem=TheoremId.T2,
        n=order,
        N=exponent,
        p=profile.p,
        weights=q.descriptor,
        lhs=lhs,
        rhs=rhs,
        holds=_holds(lhs, rhs),
        function=function,
        ratio=lhs / rhs if rhs > 0 else None,
    )


def verify_theorem2(
    f: StepFunction,
    p: float,
    exponent: int,
    q: WeightSequence,
    profile: ModulusProfile | None = None,
    function: str = "",
) -> BoundReport:
    """Estimativa de ||t_{2^n} f - f||_p para pesos não crescentes.

    Raises:
        PreconditionError: q não é não crescente em [0, 2^n] ou q_{2^n} = 0.
        DomainError: n >= M.
    """
    if not 0 <= exponent < f.M:
        raise DomainError(f"Expoente n={exponent} fora de [0, {f.M - 1}]")
    _require(q, 1 << exponent, non_decreasing=False)
    lhs = approximation_error(f, p, 1 << exponent, q)
    return theorem2_bound(lhs, _profile(f, p, profile), q, exponent, function)


# ─── Pesos não crescentes, ordens gerais ────────────────────
def _ratio_report(
    theorem: TheoremId,
    lhs: float,
    structural: float,
    profile: ModulusProfile,
    q: WeightSequence,
    n: int,
    N: int,
    C: float | None,
    function: str,
    note: str = "",
    condition_bounded: bool | None = None,
) -> BoundReport:
    tol = get_config().tolerance.holds
    ratio: float | None
    if structural == 0.0:
        if lhs <= tol:
            ratio, holds, note = None, True, note or "trivial"
        else:
            logger.warning("%s: soma estrutural nula com lhs=%.3g (n=%d, '%s')", theorem.value, lhs, n, q.descriptor)
            ratio, holds, note = math.inf, False, note or "impossible"
        rhs = 0.0
    else:
        ratio = lhs / structural
        rhs = structural if C is None else C * structural
        holds = None if C is None else _holds(lhs, rhs)
    return BoundReport(
        theorem=theorem,
        n=n,
        N=N,
        p=profile.p,
        weights=q.descriptor,
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        function=function,
        ratio=ratio,
        note=note,
        condition_bounded=condition_bounded,
    )


def theorem3_bound(
    lhs: float,
    profile: ModulusProfile,
    q: WeightSequence,
    n: int,
    C: float | None = None,
    function: str = "",
    horizon: int | None = None,
    condition_bounded: bool | None = None,
) -> BoundReport:
    """Razão lhs / sum_{j<=N} 2^{j-N} omega_j; C opcional fecha a desigualdade."""
    N = _check_inner_order(n, profile.M)
    _require(q, n, non_decreasing=False)
    j = np.arange(N + 1)
    structural = float(np.sum(np.exp2(j - N) * profile.omegas[: N + 1]))
    evidence = condition_bounded
    if evidence is None:
        evidence = fejer_condition(q, horizon if horizon is not None else max(n, 16)).bounded
    return _ratio_report(TheoremId.T3, lhs, structural, profile, q, n, N, C, function, condition_bounded=evidence)


def verify_theorem3(
    f: StepFunction,
    p: float,
    n: int,
    q: WeightSequence,
    C: float | None = None,
    profile: ModulusProfile | None = None,
    function: str = "",
    horizon: int | None = None,
) -> BoundReport:
    """Estimativa para pesos não crescentes com 1/Q_n = O(1/n).

    Sem C o relatório traz apenas a razão (holds = None); a evidência da
    condição n/Q_n limitada vem em ``condition_bounded``.
    """
    _check_inner_order(n, f.M)
    _require(q, n, non_decreasing=False)
    lhs = approximation_error(f, p, n, q)
    return theorem3_bound(lhs, _profile(f, p, profile), q, n, C, function, horizon)


# ─── Forma estrutural de Móricz-Siddiqi ─────────────────────
def moricz_siddiqi_bound(
    lhs: float,
    profile: ModulusProfile,
    q: WeightSequence,
    n: int,
    C: float | None = None,
    function: str = "",
) -> BoundReport:
    """n = 2^j + k, 1 <= k <= 2^j.

    Pesos não decrescentes: (1/Q_n) sum_{i<j} 2^i q_{n-2^i} omega_i + omega_j.
    Não crescentes: (1/Q_n) sum_{i<j} (Q_{n-2^i+1} - Q_{n-2^{i+1}+1}) omega_i + omega_j.
    """
    if not 2 <= n <= 1 << profile.M:
        raise DomainError(f"Ordem n={n} fora de [2, 2^{profile.M}]")
    j = highest_bit(n - 1)
    shape = q.monotonicity(n)
    note = ""
    i = np.arange(j)
    if shape.is_non_increasing and not shape.is_non_decreasing:
        prefix = q.prefix_sums(n)
        mass = prefix[n - (1 << i) + 1] - prefix[n - (1 << (i + 1)) + 1]
    else:
        if shape is Monotonicity.NEITHER:
            note = "non-monotone"
            logger.info("Pesos '%s' não monótonos em [0, %d]: usando a forma não decrescente", q.descriptor, n)
        weights = q.values(n + 1)
        mass = np.exp2(i) * weights[n - (1 << i)]
    structural = float(np.sum(mass * profile.omegas[:j])) / q.Q(n) + profile.omega(j)
    return _ratio_report(TheoremId.MS, lhs, structural, profile, q, n, highest_bit(n), C, function, note=note)


def verify_moricz_siddiqi(
    f: StepFunction,
    p: float,
    n: int,
    q: WeightSequence,
    C: float | None = None,
    profile: ModulusProfile | None = None,
    function: str = "",
) -> BoundReport:
    """Razão entre o erro e a soma estrutural de Móricz-Siddiqi."""
    if not 2 <= n <= f.size:
        raise DomainError(f"Ordem n={n} fora de [2, 2^{f.M}]")
    lhs = approximation_error(f, p, n, q)
    return moricz_siddiqi_bound(lhs, _profile(f, p, profile), q, n, C, function)
