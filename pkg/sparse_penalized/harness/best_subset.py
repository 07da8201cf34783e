"""
    Exhaustive best-subset selection under the L0 penalized least squares criterion

        RSS(M) / (2n) + lam^2 |M| / 2
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
from collections.abc import Iterable

import numpy as np

from sparse_penalized.constants import EXHAUSTIVE_MAX_D
from sparse_penalized.exceptions import ContractError
from sparse_penalized.models import Dataset


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class SubsetOracleResult:
    subset: tuple[int, ...]  # selected penalized columns
    beta: np.ndarray
    criterion: float
    evaluated: int

    def as_dict(self) -> dict:
        return {
            'subset': list(self.subset),
            'beta': self.beta.tolist(),
            'criterion': self.criterion,
            'evaluated': self.evaluated,
        }


def subset_fit(data: Dataset, columns: tuple[int, ...]) -> tuple[np.ndarray, float]:
    beta = np.zeros(data.d)
    if not columns:
        return beta, float(data.y @ data.y)
    coefficients, *_ = np.linalg.lstsq(data.X[:, list(columns)], data.y, rcond=None)
    beta[list(columns)] = coefficients
    residuals = data.y - data.X @ beta
    return beta, float(residuals @ residuals)


def best_subset_oracle(
    data: Dataset,
    lam: float,
    max_d: int = EXHAUSTIVE_MAX_D,
    *,
    unpenalized: Iterable[int] = (),
) -> SubsetOracleResult:
    """
    Globally optimal subset by enumeration, with OLS coefficients on it. Columns in
    `unpenalized` (e.g. an intercept) are part of every model and not counted in |M|.
    Ties are resolved towards the smaller subset.
    """
    if data.d > max_d:
        raise ContractError(f'Best subset search refused: d={data.d} exceeds max_d={max_d}')
    if lam < 0:
        raise ContractError(f'lam must be >= 0, got {lam!r}')
    always = sorted(set(unpenalized))
    if any(not 0 <= j < data.d for j in always):
        raise ContractError(f'Unpenalized columns {always} out of range for d={data.d}')
    candidates = [j for j in range(data.d) if j not in always]

    best = None
    evaluated = 0
    for size in range(len(candidates) + 1):
        for chosen in itertools.combinations(candidates, size):
            beta, rss = subset_fit(data, tuple(sorted(always + list(chosen))))
            criterion = rss / (2 * data.n) + 0.5 * lam**2 * size
            evaluated += 1
            if best is None or criterion < best[0]:
                best = (criterion, chosen, beta)

    criterion, chosen, beta = best
    logger.debug('Best subset %s of %i evaluated (lam=%g)', chosen, evaluated, lam)
    return SubsetOracleResult(subset=tuple(chosen), beta=beta, criterion=criterion, evaluated=evaluated)
