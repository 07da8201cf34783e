"""
    Effective number of parameters and the sandwich covariance of the active coefficients.

    Both use the un-averaged log-likelihood: J = -d^2 loglik (observed information) together
    with n * Sigma_lambda, so the penalty curvature is on the same scale as J.
"""

from __future__ import annotations

import logging

import numpy as np

from sparse_penalized.exceptions import ContractError, SingularMatrixError
from sparse_penalized.models import LikelihoodObjective
from sparse_penalized.solver import FitResult


logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12


def _active_bracket(fit: FitResult, objective: LikelihoodObjective) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Active indices, J_AA and J_AA + n * Sigma_AA."""
    active = np.array(fit.active_set, dtype=int)
    _, hessian = objective.score_hessian(np.array(fit.beta))
    information = -hessian[np.ix_(active, active)]
    bracket = information + objective.n * np.diag(fit.sigma_lambda[active])
    if np.linalg.cond(bracket) > CONDITION_LIMIT:
        raise SingularMatrixError(f'J + n*Sigma_lambda is singular on the active set {fit.active_set}')
    return active, information, bracket


def effective_params(fit: FitResult, objective: LikelihoodObjective) -> float:
    """
    e(lambda) = tr[(J + n Sigma_lambda)^-1 J] over the active set; 0 for an empty model.
    """
    if not fit.active_set:
        return 0.0
    _, information, bracket = _active_bracket(fit, objective)
    return float(np.trace(np.linalg.solve(bracket, information)))


def sandwich_cov(fit: FitResult, objective: LikelihoodObjective) -> np.ndarray:
    """
    (J + n Sigma)^-1 C (J + n Sigma)^-1 with C the empirical covariance (sum, no n-1 correction)
    of the per-observation score contributions of the active coefficients.
    """
    if not fit.active_set:
        raise ContractError('sandwich_cov() needs a nonempty active set')
    active, _, bracket = _active_bracket(fit, objective)
    scores = objective.observation_scores(np.array(fit.beta))[:, active]
    centered = scores - scores.mean(axis=0)
    meat = centered.T @ centered
    inverse = np.linalg.inv(bracket)
    covariance = inverse @ meat @ inverse.T
    return (covariance + covariance.T) / 2


def standard_errors(covariance: np.ndarray) -> np.ndarray:
    return np.sqrt(np.clip(np.diag(covariance), 0.0, None))
