"""
    Values and derivatives of the penalty families, evaluated at |beta|.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence

import numpy as np

from sparse_penalized.exceptions import ContractError, DomainError
from sparse_penalized.penalties.data_classes import PenaltyKind, PenaltySpec, RidgeConvention


def _check_abs(beta_abs: float, *, strict: bool) -> float:
    beta_abs = float(beta_abs)
    if math.isnan(beta_abs) or beta_abs < 0 or (strict and beta_abs == 0):
        raise DomainError(f'|beta| must be {">" if strict else ">="} 0, got {beta_abs!r}')
    return beta_abs


def _ridge_factor(spec: PenaltySpec) -> float:
    return 1.0 if spec.ridge == RidgeConvention.LAMBDA else 0.5


def penalty_value(spec: PenaltySpec, beta_abs: float) -> float:
    """
    p_lam(|beta|)

    >>> penalty_value(PenaltySpec(kind=PenaltyKind.L1, lam=1), 2)
    2.0
    >>> round(penalty_value(PenaltySpec(kind=PenaltyKind.HARD, lam=1), 0.4), 12)
    0.64
    >>> round(penalty_value(PenaltySpec(kind=PenaltyKind.SCAD, lam=1), 5), 12)
    2.35
    """
    t = _check_abs(beta_abs, strict=False)
    lam = spec.lam
    match spec.kind:
        case PenaltyKind.L1:
            return lam * t
        case PenaltyKind.L2:
            return _ridge_factor(spec) * lam * t * t
        case PenaltyKind.HARD:
            return lam * lam - max(lam - t, 0.0) ** 2
        case PenaltyKind.ENTROPY:
            return 0.0 if t == 0 else 0.5 * lam * lam
        case PenaltyKind.BRIDGE:
            return lam * t**spec.q
        case PenaltyKind.SCAD:
            a = spec.a
            if t <= lam:
                return lam * t
            if t <= a * lam:
                return -(t * t - 2 * a * lam * t + lam * lam) / (2 * (a - 1))
            return (a + 1) * lam * lam / 2
    raise NotImplementedError(spec.kind)


def penalty_deriv(spec: PenaltySpec, beta_abs: float) -> float:
    """
    p'_lam(|beta|) for |beta| > 0

    >>> penalty_deriv(PenaltySpec(kind=PenaltyKind.SCAD, lam=1), 0.5)
    1.0
    >>> penalty_deriv(PenaltySpec(kind=PenaltyKind.SCAD, lam=1), 4)
    0.0
    """
    t = _check_abs(beta_abs, strict=True)
    lam = spec.lam
    match spec.kind:
        case PenaltyKind.L1:
            return lam
        case PenaltyKind.L2:
            return 2 * _ridge_factor(spec) * lam * t
        case PenaltyKind.HARD:
            return 2 * max(lam - t, 0.0)
        case PenaltyKind.ENTROPY:
            return 0.0
        case PenaltyKind.BRIDGE:
            return spec.q * lam * t ** (spec.q - 1)
        case PenaltyKind.SCAD:
            a = spec.a
            if t < lam:
                return lam
            if t < a * lam:
                return (a * lam - t) / (a - 1)
            return 0.0
    raise NotImplementedError(spec.kind)


def penalty_second_deriv(spec: PenaltySpec, beta_abs: float) -> float:
    """
    p''_lam(|beta|) for |beta| > 0, right-sided at the breakpoints.
    """
    t = _check_abs(beta_abs, strict=True)
    lam = spec.lam
    match spec.kind:
        case PenaltyKind.L1 | PenaltyKind.ENTROPY:
            return 0.0
        case PenaltyKind.L2:
            return 2 * _ridge_factor(spec) * lam
        case PenaltyKind.HARD:
            return -2.0 if t < lam else 0.0
        case PenaltyKind.BRIDGE:
            return spec.q * (spec.q - 1) * lam * t ** (spec.q - 2)
        case PenaltyKind.SCAD:
            if lam <= t < spec.a * lam:
                return -1 / (spec.a - 1)
            return 0.0
    raise NotImplementedError(spec.kind)


def penalty_deriv_at_zero_plus(spec: PenaltySpec) -> float:
    """
    The one-sided limit p'_lam(0+). A jump of the penalty at zero (Entropy) gives +inf.
    """
    lam = spec.lam
    if lam == 0:
        return 0.0
    match spec.kind:
        case PenaltyKind.L1 | PenaltyKind.SCAD:
            return lam
        case PenaltyKind.HARD:
            return 2 * lam
        case PenaltyKind.L2:
            return 0.0
        case PenaltyKind.ENTROPY:
            return math.inf
        case PenaltyKind.BRIDGE:
            if spec.q < 1:
                return math.inf
            return lam if spec.q == 1 else 0.0
    raise NotImplementedError(spec.kind)


def total_penalty(penalties: Sequence[PenaltySpec], beta: Iterable[float]) -> float:
    """Sum of p_lam_j(|beta_j|) over all coordinates."""
    return math.fsum(penalty_value(spec, abs(float(b))) for spec, b in zip(penalties, beta, strict=True))


def per_coordinate_penalties(
    kind: PenaltyKind,
    lambdas: Sequence[float],
    *,
    unpenalized: Iterable[int] = (),
    **spec_kwargs,
) -> list[PenaltySpec]:
    """
    Build the per-coordinate penalty list: one PenaltySpec per coefficient, lam_j = 0 for `unpenalized`.

    >>> [spec.lam for spec in per_coordinate_penalties(PenaltyKind.L1, [0.5, 0.5, 0.5], unpenalized=[0])]
    [0.0, 0.5, 0.5]
    """
    unpenalized = set(unpenalized)
    d = len(lambdas)
    if invalid := sorted(j for j in unpenalized if not 0 <= j < d):
        raise ContractError(f'Unpenalized indices {invalid} out of range for {d} coefficients')
    return [
        PenaltySpec(kind=kind, lam=0.0 if j in unpenalized else float(lam), **spec_kwargs)
        for j, lam in enumerate(lambdas)
    ]


def _check_sigma_n(sigma: float, n: int) -> None:
    if sigma < 0 or n < 1:
        raise ContractError(f'Need sigma >= 0 and n >= 1, got {sigma=} {n=}')


def adjusted_r2_lambda(sigma: float, n: int) -> float:
    """Entropy-penalty level at which PLS matches the adjusted R^2 criterion."""
    _check_sigma_n(sigma, n)
    return sigma / math.sqrt(n)


def gcv_lambda(sigma: float, n: int) -> float:
    """Entropy-penalty level at which PLS matches GCV for subset selection."""
    _check_sigma_n(sigma, n)
    return math.sqrt(2) * sigma / math.sqrt(n)


def ric_lambda(sigma: float, n: int, d: int) -> float:
    """Risk inflation criterion level sqrt(2 log d) * sigma / sqrt(n)."""
    _check_sigma_n(sigma, n)
    if d < 2:
        raise ContractError(f'RIC needs d >= 2, got {d=}')
    return math.sqrt(2 * math.log(d)) * sigma / math.sqrt(n)


def universal_lambda(sigma: float, n: int) -> float:
    """
    Universal threshold sigma * sqrt(2 log(n) / n)

    >>> round(universal_lambda(1.0, 1024), 6)
    0.116353
    """
    _check_sigma_n(sigma, n)
    if n < 2:
        raise ContractError(f'Universal threshold needs n >= 2, got {n=}')
    return sigma * math.sqrt(2 * math.log(n) / n)


def penalty_values(spec: PenaltySpec, beta_abs: np.ndarray) -> np.ndarray:
    """Vectorized `penalty_value()` over an array of |beta| values."""
    t = np.asarray(beta_abs, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0):
        raise DomainError('|beta| values must be >= 0')
    lam = spec.lam
    match spec.kind:
        case PenaltyKind.L1:
            return lam * t
        case PenaltyKind.L2:
            return _ridge_factor(spec) * lam * t * t
        case PenaltyKind.HARD:
            return lam * lam - np.maximum(lam - t, 0.0) ** 2
        case PenaltyKind.ENTROPY:
            return np.where(t > 0, 0.5 * lam * lam, 0.0)
        case PenaltyKind.BRIDGE:
            return lam * t**spec.q
        case PenaltyKind.SCAD:
            a = spec.a
            return np.select(
                [t <= lam, t <= a * lam],
                [lam * t, -(t * t - 2 * a * lam * t + lam * lam) / (2 * (a - 1))],
                default=(a + 1) * lam * lam / 2,
            )
    raise NotImplementedError(spec.kind)
