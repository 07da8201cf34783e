"""
    Regularization parameter selection by generalized cross-validation

    GCV(lambda) = -loglik(beta_lambda) / (n * (1 - c * e(lambda) / n)**2)

    over a one-dimensional grid of base levels lambda, with per-coordinate levels
    lambda_j = lambda * se_j scaled by the standard errors of the unpenalized MLE.

    c is the cost charged per effective parameter. c = 1 is the classical score,
    which charges about two units of -loglik per parameter and keeps noise variables.
    The default c = max(1, log n) charges log(n) units per parameter, as BIC does.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from sparse_penalized.constants import SCAD_DEFAULT_A
from sparse_penalized.exceptions import ContractError, SolverError
from sparse_penalized.models import LikelihoodObjective
from sparse_penalized.penalties import PenaltyKind, per_coordinate_penalties
from sparse_penalized.solver import FitResult, InitKind, LqaConfig, fit, newton_maximize, start_value
from sparse_penalized.tuning.inference import effective_params
from sparse_penalized.utilities.error_handling import LogErrors


logger = logging.getLogger(__name__)

GRID_SIZE = 50
GRID_RATIO = 1e-4


@dataclasses.dataclass(frozen=True)
class GcvPoint:
    lam: float
    gcv: float
    effective_params: float
    objective: float
    loglik: float
    active_size: int
    converged: bool


@dataclasses.dataclass(frozen=True, eq=False)
class TuningResult:
    lambda_grid: tuple[float, ...]
    gcv_scores: tuple[float, ...]
    chosen_lambda: float
    per_coordinate_lambda: tuple[float, ...]
    fit_at_chosen: FitResult
    traces: tuple[GcvPoint | None, ...]  # None where the fit failed
    standard_errors: tuple[float, ...]
    chosen_index: int
    df_cost: float

    def as_dict(self) -> dict:
        return {
            'lambda_grid': list(self.lambda_grid),
            'gcv_scores': list(self.gcv_scores),
            'chosen_lambda': self.chosen_lambda,
            'chosen_index': self.chosen_index,
            'df_cost': self.df_cost,
            'per_coordinate_lambda': list(self.per_coordinate_lambda),
            'standard_errors': list(self.standard_errors),
            'traces': [dataclasses.asdict(point) if point else None for point in self.traces],
            'fit': self.fit_at_chosen.as_dict(),
        }


def gcv_score(loglik: float, effective: float, n: int, df_cost: float = 1.0) -> float:
    """
    >>> gcv_score(-50.0, 0.0, 100)
    0.5
    >>> gcv_score(-50.0, 100.0, 100)
    inf
    >>> gcv_score(-50.0, 10.0, 100, df_cost=5.0)
    2.0
    """
    charged = df_cost * effective
    if charged >= n:
        return math.inf
    return -loglik / (n * (1 - charged / n) ** 2)


def default_df_cost(n: int) -> float:
    """
    >>> default_df_cost(2)
    1.0
    >>> round(default_df_cost(400), 6)
    5.991465
    """
    return max(1.0, math.log(n))


def mle_standard_errors(objective: LikelihoodObjective) -> tuple[np.ndarray, np.ndarray | None]:
    """
    Standard errors from the inverse observed information at the unpenalized MLE,
    or unit scaling (logged) where the MLE is not available.
    Returns the standard errors and the MLE (None if unavailable).
    """
    try:
        beta = newton_maximize(objective)
        _, hessian = objective.score_hessian(beta)
        variances = np.diag(np.linalg.inv(-hessian))
        if not np.all(np.isfinite(variances)) or np.any(variances <= 0):
            raise SolverError('Inverse information has nonpositive variances')
    except (SolverError, np.linalg.LinAlgError) as err:
        logger.warning('No MLE standard errors (%s): using unit scaling of lambda', err)
        return np.ones(objective.d), None
    return np.sqrt(variances), beta


def lambda_max(beta_mle: np.ndarray, standard_errors: np.ndarray, penalized: Iterable[int]) -> float:
    """Smallest base level whose soft rule zeroes every penalized MLE-scaled coordinate."""
    penalized = list(penalized)
    if not penalized:
        return 0.0
    return float(np.max(np.abs(beta_mle[penalized]) / standard_errors[penalized]))


def default_lambda_grid(lam_max: float, size: int = GRID_SIZE, ratio: float = GRID_RATIO) -> tuple[float, ...]:
    """
    >>> default_lambda_grid(1.0, size=3, ratio=0.01)
    (0.01, 0.1, 1.0)
    """
    if not lam_max > 0:
        logger.warning('lambda_max=%r is not positive: using the unit grid', lam_max)
        lam_max = 1.0
    return tuple(float(lam) for lam in np.geomspace(lam_max * ratio, lam_max, size))


def gcv_select(
    objective: LikelihoodObjective,
    penalty_kind: PenaltyKind,
    lambda_grid: Sequence[float] | None = None,
    config: LqaConfig | None = None,
    *,
    unpenalized: Iterable[int] = (),
    a: float = SCAD_DEFAULT_A,
    q: float = 0.5,
    standard_errors: Sequence[float] | None = None,
    grid_size: int = GRID_SIZE,
    workers: int = 1,
    df_cost: float | None = None,
) -> TuningResult:
    config = config or LqaConfig()
    cost = default_df_cost(objective.n) if df_cost is None else float(df_cost)
    if not cost > 0:
        raise ContractError(f'df_cost must be > 0, not {df_cost!r}')
    unpenalized = sorted(set(unpenalized))
    penalized = [j for j in range(objective.d) if j not in unpenalized]

    se, beta_mle = mle_standard_errors(objective)
    if standard_errors is not None:
        se = np.array(standard_errors, dtype=float)
        if se.shape != (objective.d,) or np.any(se <= 0):
            raise ContractError(f'standard_errors must be {objective.d} positive values')

    if beta_mle is not None:
        start = beta_mle
    else:
        start, _ = start_value(objective)

    if lambda_grid is None:
        lambda_grid = default_lambda_grid(lambda_max(start, se, penalized), size=grid_size)
    lambda_grid = tuple(float(lam) for lam in lambda_grid)
    if not lambda_grid:
        raise ContractError('lambda_grid must not be empty')
    if any(lam < 0 for lam in lambda_grid):
        raise ContractError('lambda_grid values must be >= 0')

    fit_config = config.with_start(start) if config.init == InitKind.MLE else config

    def evaluate(lam: float) -> tuple[GcvPoint, FitResult] | None:
        penalties = per_coordinate_penalties(penalty_kind, list(lam * se), unpenalized=unpenalized, a=a, q=q)
        with LogErrors(logger, message=f'GCV grid point lambda={lam:g} failed: %s'):
            result = fit(objective, penalties, fit_config)
            effective = effective_params(result, objective)
            point = GcvPoint(
                lam=lam,
                gcv=gcv_score(result.loglik, effective, objective.n, cost),
                effective_params=effective,
                objective=result.objective,
                loglik=result.loglik,
                active_size=len(result.active_set),
                converged=result.converged,
            )
            return point, result
        return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            evaluated = list(executor.map(evaluate, lambda_grid))
    else:
        evaluated = [evaluate(lam) for lam in lambda_grid]

    scores = tuple(item[0].gcv if item else math.inf for item in evaluated)
    if all(math.isinf(score) for score in scores):
        raise SolverError('No lambda grid point could be scored')
    chosen = int(np.argmin(scores))
    chosen_point, chosen_fit = evaluated[chosen]
    logger.info(
        'GCV chose lambda=%g (index %i of %i, %i active)',
        chosen_point.lam,
        chosen,
        len(lambda_grid),
        chosen_point.active_size,
    )
    return TuningResult(
        lambda_grid=lambda_grid,
        gcv_scores=scores,
        chosen_lambda=lambda_grid[chosen],
        per_coordinate_lambda=tuple(spec.lam for spec in chosen_fit.penalties),
        fit_at_chosen=chosen_fit,
        traces=tuple(item[0] if item else None for item in evaluated),
        standard_errors=tuple(float(value) for value in se),
        chosen_index=chosen,
        df_cost=cost,
    )
