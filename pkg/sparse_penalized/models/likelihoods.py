"""
    Averaged GLM log-likelihoods n^-1 sum_i log f(y_i | x_i' beta) with analytic derivatives.

    Constants are dropped: the Gaussian uses sigma^2 = 1, the Poisson drops log(y!).
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.special import expit

from sparse_penalized.exceptions import ContractError
from sparse_penalized.models.data_classes import Dataset, GlmFamily, validate_response


logger = logging.getLogger(__name__)


def check_beta(beta, d: int) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (d,):
        raise ContractError(f'beta must have shape ({d},), got {beta.shape}')
    return beta


def linear_predictor(beta, data: Dataset) -> np.ndarray:
    return data.X @ check_beta(beta, data.d)


def observation_loglik(family: GlmFamily, eta: np.ndarray, y: np.ndarray) -> np.ndarray:
    """log f per observation, evaluated without overflow."""
    match family:
        case GlmFamily.GAUSSIAN:
            return -0.5 * (y - eta) ** 2
        case GlmFamily.LOGISTIC:
            return y * eta - np.logaddexp(0.0, eta)
        case GlmFamily.POISSON:
            with np.errstate(over='ignore'):
                return y * eta - np.exp(eta)
    raise NotImplementedError(family)


def mean_response(family: GlmFamily, eta: np.ndarray) -> np.ndarray:
    """Inverse link"""
    match family:
        case GlmFamily.GAUSSIAN:
            return eta
        case GlmFamily.LOGISTIC:
            return expit(eta)
        case GlmFamily.POISSON:
            with np.errstate(over='ignore'):
                return np.exp(eta)
    raise NotImplementedError(family)


def variance_weights(family: GlmFamily, eta: np.ndarray) -> np.ndarray:
    """-d^2 log f / d eta^2 per observation."""
    match family:
        case GlmFamily.GAUSSIAN:
            return np.ones_like(eta)
        case GlmFamily.LOGISTIC:
            p = expit(eta)
            return p * (1 - p)
        case GlmFamily.POISSON:
            with np.errstate(over='ignore'):
                return np.exp(eta)
    raise NotImplementedError(family)


def avg_loglik(family: GlmFamily, beta, data: Dataset) -> float:
    """
    >>> data = Dataset(X=[[1.0], [2.0]], y=[0.0, 1.0])
    >>> round(avg_loglik(GlmFamily.LOGISTIC, [0.0], data), 12)
    -0.69314718056
    """
    y = validate_response(family, data.y)
    eta = linear_predictor(beta, data)
    contributions = data.observation_weights() * observation_loglik(family, eta, y)
    return float(np.sum(contributions) / data.n)


def observation_scores(family: GlmFamily, beta, data: Dataset) -> np.ndarray:
    """Per-observation score contributions w_i (y_i - mu_i) x_i, an n x d matrix."""
    y = validate_response(family, data.y)
    eta = linear_predictor(beta, data)
    residual = data.observation_weights() * (y - mean_response(family, eta))
    return data.X * residual[:, np.newaxis]


def score_and_hessian(family: GlmFamily, beta, data: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """
    Gradient and Hessian of `avg_loglik()` in beta.
    """
    y = validate_response(family, data.y)
    eta = linear_predictor(beta, data)
    weights = data.observation_weights()

    gradient = data.X.T @ (weights * (y - mean_response(family, eta))) / data.n
    curvature = weights * variance_weights(family, eta)
    hessian = -(data.X.T * curvature) @ data.X / data.n
    hessian = (hessian + hessian.T) / 2
    return gradient, hessian
