"""
    Exact scalar minimizer of Q(b) = (z - b)**2 / 2 + p_lam(|b|)
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.optimize import brentq

from sparse_penalized.penalties.data_classes import PenaltyKind, PenaltySpec, RidgeConvention
from sparse_penalized.penalties.functions import penalty_value


logger = logging.getLogger(__name__)

BRIDGE_XTOL = 1e-14


def scalar_objective(spec: PenaltySpec, z: float, beta: float) -> float:
    return 0.5 * (z - beta) ** 2 + penalty_value(spec, abs(beta))


def soft_threshold(z: float, lam: float) -> float:
    """
    >>> soft_threshold(2.0, 1.0)
    1.0
    >>> soft_threshold(-0.5, 1.0)
    0.0
    """
    return math.copysign(max(abs(z) - lam, 0.0), z) if abs(z) > lam else 0.0


def _bridge_threshold(spec: PenaltySpec, z_abs: float) -> float:
    q, lam = spec.q, spec.lam
    if q == 1:
        return max(z_abs - lam, 0.0)

    def stationarity(b: float) -> float:
        return b - z_abs + lam * q * b ** (q - 1)

    if q < 1:
        # Q is concave below the inflection point and convex above it,
        # so the only candidate besides 0 is the root of Q' in [inflection, |z|]:
        lower = (q * (1 - q) * lam) ** (1 / (2 - q))
        if lower >= z_abs or stationarity(lower) >= 0:
            return 0.0
    else:
        lower = 0.0

    candidate = float(brentq(stationarity, lower, z_abs, xtol=BRIDGE_XTOL))
    if scalar_objective(spec, z_abs, candidate) < scalar_objective(spec, z_abs, 0.0):
        return candidate
    return 0.0  # ties go to the sparser solution


def _threshold_abs(spec: PenaltySpec, z_abs: float) -> float:
    lam = spec.lam
    if lam == 0:
        return z_abs
    match spec.kind:
        case PenaltyKind.L1:
            return max(z_abs - lam, 0.0)
        case PenaltyKind.L2:
            scale = 2.0 if spec.ridge == RidgeConvention.LAMBDA else 1.0
            return z_abs / (1 + scale * lam)
        case PenaltyKind.HARD:
            # Global minimizer: keep z once (z**2)/2 exceeds the penalty cost lam**2
            return z_abs if z_abs > math.sqrt(2) * lam else 0.0
        case PenaltyKind.ENTROPY:
            return z_abs if z_abs > lam else 0.0
        case PenaltyKind.SCAD:
            a = spec.a
            if z_abs <= 2 * lam:
                return max(z_abs - lam, 0.0)
            if z_abs <= a * lam:
                return ((a - 1) * z_abs - a * lam) / (a - 2)
            return z_abs
        case PenaltyKind.BRIDGE:
            return _bridge_threshold(spec, z_abs)
    raise NotImplementedError(spec.kind)


def threshold(spec: PenaltySpec, z: float) -> float:
    """
    Global minimizer of (z - b)**2 / 2 + p_lam(|b|) over b.

    >>> threshold(PenaltySpec(kind=PenaltyKind.L1, lam=1), 2)
    1.0
    >>> round(threshold(PenaltySpec(kind=PenaltyKind.SCAD, lam=1), 3), 6)
    2.588235
    >>> threshold(PenaltySpec(kind=PenaltyKind.HARD, lam=1), 1.1)
    0.0
    >>> threshold(PenaltySpec(kind=PenaltyKind.L2, lam=1), 2)
    0.6666666666666666
    """
    z = float(z)
    if z == 0:
        return 0.0
    if not math.isfinite(z):
        return z
    value = _threshold_abs(spec, abs(z))
    return math.copysign(value, z) if value else 0.0


def threshold_array(spec: PenaltySpec, z: np.ndarray) -> np.ndarray:
    """Componentwise `threshold()` of a vector."""
    z = np.asarray(z, dtype=float)
    return np.array([threshold(spec, float(value)) for value in z.ravel()], dtype=float).reshape(z.shape)
