"""
    Classical subset-selection criteria for Gaussian linear models.

    Every candidate model contains an intercept, so a subset of k columns has m = k + 1
    parameters and the null subset is the intercept-only model.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np
import pandas as pd

from sparse_penalized.constants import EXHAUSTIVE_MAX_D
from sparse_penalized.exceptions import ContractError
from sparse_penalized.models import Dataset


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SubsetCriteria:
    subset: tuple[int, ...]
    m: int
    rss: float
    adjusted_r2: float
    gcv: float
    pls: float
    taylor_gap: float


def subset_rss(data: Dataset, subset: Sequence[int]) -> float:
    """Residual sum of squares of the least-squares fit on an intercept plus the subset columns."""
    design = np.column_stack([np.ones(data.n), data.X[:, list(subset)]])
    coefficients, *_ = np.linalg.lstsq(design, data.y, rcond=None)
    residuals = data.y - design @ coefficients
    return float(residuals @ residuals)


def all_subsets(d: int, max_d: int = EXHAUSTIVE_MAX_D) -> list[tuple[int, ...]]:
    """
    >>> all_subsets(2)
    [(), (0,), (1,), (0, 1)]
    """
    if d > max_d:
        raise ContractError(f'Enumerating all subsets needs d <= {max_d}, got d={d}')
    return [subset for size in range(d + 1) for subset in itertools.combinations(range(d), size)]


def check_subsets(subsets: Iterable[Iterable[int]], d: int) -> list[tuple[int, ...]]:
    checked = []
    for subset in subsets:
        subset = tuple(sorted(int(j) for j in subset))
        if missing := [j for j in subset if not 0 <= j < d]:
            raise ContractError(f'Subset {subset} references missing columns {missing} (d={d})')
        if len(set(subset)) != len(subset):
            raise ContractError(f'Subset {subset} contains duplicate columns')
        checked.append(subset)
    return checked


def classical_criteria(
    data: Dataset,
    subsets: Iterable[Iterable[int]] | None = None,
    *,
    lam: float = 0.0,
    sigma2: float | None = None,
) -> list[SubsetCriteria]:
    """
    Per-subset RSS_m, adjusted R^2, GCV(m), the L0 penalized least squares score
    RSS_m / (2n) + lam^2 |M| / 2 and the gap of the second-order expansion that links
    adjusted R^2 to a penalized criterion. sigma2 defaults to the full-model mean squared error.
    """
    n, d = data.n, data.d
    subsets = all_subsets(d) if subsets is None else check_subsets(subsets, d)

    rss_null = subset_rss(data, ())
    if sigma2 is None:
        if n - d - 1 <= 0:
            raise ContractError(f'Full-model variance needs n > d + 1, got n={n}, d={d}')
        sigma2 = subset_rss(data, range(d)) / (n - d - 1)
    if not sigma2 > 0:
        raise ContractError(f'sigma2 must be > 0, got {sigma2!r}')

    rows = []
    for subset in subsets:
        m = len(subset) + 1
        rss = rss_null if not subset else subset_rss(data, subset)
        if m >= n:
            adjusted_r2 = gcv = taylor_gap = math.nan
        else:
            adjusted_r2 = 1 - (n - 1) / (n - m) * rss / rss_null if rss_null > 0 else math.nan
            gcv = rss / (n * (1 - m / n) ** 2)
            taylor_gap = (
                math.log(rss / (n - m)) - (math.log(sigma2) - 1) - (rss / n + m * sigma2 / n) / sigma2
                if rss > 0
                else math.nan
            )
        rows.append(
            SubsetCriteria(
                subset=subset,
                m=m,
                rss=rss,
                adjusted_r2=adjusted_r2,
                gcv=gcv,
                pls=rss / (2 * n) + 0.5 * lam**2 * len(subset),
                taylor_gap=taylor_gap,
            )
        )
    logger.debug('Evaluated classical criteria for %i subsets (n=%i, d=%i)', len(rows), n, d)
    return rows


def criteria_table(rows: Sequence[SubsetCriteria]) -> pd.DataFrame:
    table = pd.DataFrame([dataclasses.asdict(row) for row in rows])
    table['subset'] = [' '.join(str(j) for j in row.subset) for row in rows]
    return table
