"""
    Factor-model covariance: per-asset least squares on observed factors.
"""

from __future__ import annotations

import logging

import numpy as np

from sparse_penalized.covariance.cholesky import sample_covariance
from sparse_penalized.covariance.data_classes import FactorCov
from sparse_penalized.exceptions import ContractError
from sparse_penalized.models.data_classes import as_readonly


logger = logging.getLogger(__name__)


def factor_cov(Y, F) -> FactorCov:
    """
    Regress every column of the n x d return matrix Y on an intercept and the n x K
    factor matrix F. The residual variances (divisor n - K - 1) form the diagonal
    idiosyncratic covariance, the factor covariance uses divisor n.
    """
    Y = as_readonly(Y, name='Y', ndim=2)
    F = as_readonly(F, name='F', ndim=2)
    n, k = F.shape
    if Y.shape[0] != n:
        raise ContractError(f'Y has {Y.shape[0]} rows, but F has {n}')
    if n <= k + 1:
        raise ContractError(f'Need n > K + 1 observations, got n={n}, K={k}')

    design = np.column_stack([np.ones(n), F])
    coefficients, _, rank, _ = np.linalg.lstsq(design, Y, rcond=None)
    if rank < k + 1:
        raise ContractError(f'Factor matrix is rank deficient: rank {rank - 1} with K={k} factors')

    residuals = Y - design @ coefficients
    sigma0 = np.sum(residuals**2, axis=0) / (n - k - 1)
    B = coefficients[1:].T
    cov_f = sample_covariance(F)

    sigma = B @ cov_f @ B.T
    sigma = (sigma + sigma.T) / 2 + np.diag(sigma0)
    logger.debug('Factor covariance with K=%i factors for d=%i assets (n=%i)', k, Y.shape[1], n)
    return FactorCov(B=B, cov_f=cov_f, sigma0=sigma0, sigma=sigma, intercepts=coefficients[0])


def portfolio_risk(sigma: np.ndarray, xi: np.ndarray) -> float:
    """
    >>> portfolio_risk(np.eye(2), np.array([0.5, 0.5]))
    0.5
    """
    return float(xi @ sigma @ xi)
