"""
    Covariance selection through the modified Cholesky decomposition L Sigma L' = D.

    Column t is regressed on columns 1..t-1 by penalized least squares; the coefficients fill
    row t of phi (L = I - phi) and the mean squared residual is D_t.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.linalg import solve_triangular

from sparse_penalized.covariance.data_classes import CholeskyCov
from sparse_penalized.exceptions import ContractError, CovarianceEstimationError, SolverError
from sparse_penalized.models import Dataset, GlmFamily, GlmObjective
from sparse_penalized.penalties import PenaltyKind, per_coordinate_penalties
from sparse_penalized.solver import LqaConfig, fit
from sparse_penalized.tuning import gcv_select


logger = logging.getLogger(__name__)

# Relative to the column variance:
RESIDUAL_FLOOR = 1e-12


def center(W) -> np.ndarray:
    W = np.array(W, dtype=float)
    if W.ndim != 2:
        raise ContractError(f'Sample matrix must be 2-dimensional, got shape {W.shape}')
    if not np.all(np.isfinite(W)):
        raise ContractError('Sample matrix contains NaN or infinite values')
    return W - W.mean(axis=0)


def sample_covariance(W) -> np.ndarray:
    """
    Sample covariance with divisor n.

    >>> sample_covariance([[1.0, 2.0], [3.0, 2.0]])
    array([[1., 0.],
           [0., 0.]])
    """
    centered = center(W)
    return centered.T @ centered / centered.shape[0]


def precision_from_cholesky(L: np.ndarray, d_diag: np.ndarray) -> np.ndarray:
    """Sigma^-1 = L' D^-1 L"""
    return L.T @ (L / d_diag[:, None])


def covariance_from_cholesky(L: np.ndarray, d_diag: np.ndarray) -> np.ndarray:
    """Sigma = L^-1 D L^-T by a triangular solve."""
    inverse = solve_triangular(L, np.eye(len(d_diag)), lower=True, unit_diagonal=True)
    sigma = (inverse * d_diag) @ inverse.T
    return (sigma + sigma.T) / 2


def _fit_row(
    W: np.ndarray,
    t: int,
    penalty_kind: PenaltyKind,
    lam: float | None,
    lambda_grid: Sequence[float] | None,
    config: LqaConfig,
) -> tuple[np.ndarray, float, float]:
    """Coefficients, mean squared residual and base lambda of row t."""
    objective = GlmObjective(GlmFamily.GAUSSIAN, Dataset(X=W[:, :t], y=W[:, t]))
    try:
        if lam is None:
            tuning = gcv_select(objective, penalty_kind, lambda_grid, config)
            result, chosen = tuning.fit_at_chosen, tuning.chosen_lambda
        else:
            result = fit(objective, per_coordinate_penalties(penalty_kind, [lam] * t), config)
            chosen = lam
    except SolverError as err:
        raise CovarianceEstimationError(row=t + 1, error_msg=str(err)) from err
    residuals = W[:, t] - W[:, :t] @ result.beta
    return np.array(result.beta), float(residuals @ residuals / W.shape[0]), chosen


def cholesky_select(
    W,
    penalty_kind: PenaltyKind = PenaltyKind.SCAD,
    lam: float | None = None,
    *,
    lambda_grid: Sequence[float] | None = None,
    order: Sequence[int] | None = None,
    config: LqaConfig | None = None,
    workers: int = 1,
) -> CholeskyCov:
    """
    Sparse modified Cholesky estimate of the covariance of the n x d sample matrix W.
    Each row uses the fixed base level `lam`, or a GCV-selected one if `lam` is None.
    """
    W = center(W)
    n, d = W.shape
    if n < 3:
        raise ContractError(f'Need at least 3 observations, got n={n}')
    if order is None:
        order = tuple(range(d))
    else:
        order = tuple(int(j) for j in order)
        if sorted(order) != list(range(d)):
            raise ContractError(f'order must be a permutation of range({d}), got {order}')
    W = W[:, list(order)]
    config = config or LqaConfig()

    phi = np.zeros((d, d))
    d_diag = np.empty(d)
    d_diag[0] = float(W[:, 0] @ W[:, 0] / n)
    if d_diag[0] <= 0:
        raise CovarianceEstimationError(row=1, error_msg='column has zero variance')

    def row(t: int):
        return _fit_row(W, t, penalty_kind, lam, lambda_grid, config)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(row, range(1, d)))
    else:
        rows = [row(t) for t in range(1, d)]

    row_lambdas = []
    for t, (coefficients, residual_variance, chosen) in enumerate(rows, start=1):
        if residual_variance <= RESIDUAL_FLOOR * float(W[:, t] @ W[:, t] / n):
            raise CovarianceEstimationError(row=t + 1, error_msg='column is an exact combination of earlier columns')
        phi[t, :t] = coefficients
        d_diag[t] = residual_variance
        row_lambdas.append(chosen)
        logger.debug('Cholesky row %i: lambda=%g, %i nonzero', t + 1, chosen, np.count_nonzero(coefficients))

    L = np.eye(d) - phi
    return CholeskyCov(
        phi=phi,
        d_diag=d_diag,
        sigma=covariance_from_cholesky(L, d_diag),
        precision=precision_from_cholesky(L, d_diag),
        column_order=order,
        row_lambdas=tuple(float(value) for value in row_lambdas),
    )
