"""
    Monte Carlo estimate of the excess risk E loss(x' beta_hat, Y) - E loss(x' beta_star, Y)
"""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from sparse_penalized.exceptions import ContractError
from sparse_penalized.losses.erm import ErmLoss
from sparse_penalized.losses.q_class import QLoss, prediction_link
from sparse_penalized.models import Dataset


logger = logging.getLogger(__name__)

MIN_MC_N = 100

# Draws a Dataset of the given size:
DataGenerator = Callable[[int, np.random.Generator], Dataset]


@dataclasses.dataclass(frozen=True)
class RiskGap:
    gap: float
    standard_error: float
    mc_n: int

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def evaluate_loss(loss: QLoss | ErmLoss, y: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """Per-observation loss of the linear predictor eta."""
    if isinstance(loss, ErmLoss):
        return loss.value(y, eta)
    return loss(y, prediction_link(loss, eta))


def shard_sizes(total: int, shards: int) -> list[int]:
    """
    >>> shard_sizes(10, 4)
    [3, 3, 2, 2]
    """
    base, extra = divmod(total, shards)
    return [base + (index < extra) for index in range(shards)]


def empirical_risk_gap(
    beta_hat: np.ndarray,
    beta_star: np.ndarray,
    loss: QLoss | ErmLoss,
    generator: DataGenerator,
    mc_n: int,
    *,
    seed: int = 0,
    shards: int = 4,
    workers: int = 1,
) -> RiskGap:
    """
    Paired estimate: both coefficient vectors are evaluated on the same draws.
    Shards use child seeds of `seed`, so the result does not depend on `workers`.
    """
    if mc_n < MIN_MC_N:
        raise ContractError(f'mc_n must be >= {MIN_MC_N}, got {mc_n}')
    beta_hat = np.asarray(beta_hat, dtype=float)
    beta_star = np.asarray(beta_star, dtype=float)
    if beta_hat.shape != beta_star.shape or beta_hat.ndim != 1:
        raise ContractError(f'beta_hat {beta_hat.shape} and beta_star {beta_star.shape} must be equal-length vectors')

    shards = max(1, min(shards, mc_n))
    children = np.random.SeedSequence(seed).spawn(shards)

    def differences(child: np.random.SeedSequence, size: int) -> np.ndarray:
        data = generator(size, np.random.Generator(np.random.PCG64(child)))
        if data.d != len(beta_hat):
            raise ContractError(f'Generator draws d={data.d} columns for {len(beta_hat)} coefficients')
        return evaluate_loss(loss, data.y, data.X @ beta_hat) - evaluate_loss(loss, data.y, data.X @ beta_star)

    sizes = shard_sizes(mc_n, shards)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(differences, children, sizes))
    else:
        parts = [differences(child, size) for child, size in zip(children, sizes, strict=True)]

    values = np.concatenate(parts)
    gap = RiskGap(
        gap=float(values.mean()),
        standard_error=float(values.std(ddof=1) / np.sqrt(mc_n)),
        mc_n=mc_n,
    )
    logger.debug('Risk gap %.6g +- %.3g (mc_n=%i)', gap.gap, gap.standard_error, mc_n)
    return gap
