"""
    Unpenalized (or slightly ridge-stabilized) maximum likelihood by Newton-Raphson with step halving.
"""

from __future__ import annotations

import logging

import numpy as np

from sparse_penalized.exceptions import SolverError
from sparse_penalized.models import LikelihoodObjective


logger = logging.getLogger(__name__)

RIDGE_FALLBACK = 1e-4
DIVERGENCE_BOUND = 1e6


def newton_maximize(
    objective: LikelihoodObjective,
    *,
    ridge: float = 0.0,
    beta0: np.ndarray | None = None,
    max_iter: int = 100,
    tol: float = 1e-10,
) -> np.ndarray:
    """
    Maximize n^-1 loglik(beta) - ridge * |beta|^2 / 2.
    Raises SolverError if the maximum does not exist numerically.
    """
    n, d = objective.n, objective.d
    beta = np.zeros(d) if beta0 is None else np.array(beta0, dtype=float)

    def target(b: np.ndarray) -> float:
        return objective.loglik(b) / n - 0.5 * ridge * float(b @ b)

    current = target(beta)
    if not np.isfinite(current):
        raise SolverError('Likelihood is not finite at the start value')

    for iteration in range(1, max_iter + 1):
        gradient, hessian = objective.score_hessian(beta)
        gradient = gradient / n - ridge * beta
        information = -hessian / n + ridge * np.eye(d)

        eigenvalues = np.linalg.eigvalsh(information)
        if not np.all(np.isfinite(eigenvalues)) or eigenvalues[0] <= 1e-10 * max(1.0, eigenvalues[-1]):
            raise SolverError(f'Information matrix is singular (smallest eigenvalue {eigenvalues[0]:.3g})')
        step = np.linalg.solve(information, gradient)

        for _ in range(30):
            candidate = beta + step
            value = target(candidate)
            if np.isfinite(value) and value >= current - 1e-12 * abs(current):
                break
            step = step / 2
        else:
            raise SolverError('Newton step halving failed')

        beta, current = candidate, value
        if np.max(np.abs(beta)) > DIVERGENCE_BOUND:
            raise SolverError('Coefficients diverge: the maximum likelihood estimate does not exist')
        if np.max(np.abs(step)) <= tol * (1 + np.max(np.abs(beta))) and np.max(np.abs(gradient)) <= 1e3 * tol:
            logger.debug('Newton converged after %i iterations (ridge=%g)', iteration, ridge)
            return beta

    raise SolverError(f'Newton iteration did not converge in {max_iter} iterations')


def start_value(objective: LikelihoodObjective) -> tuple[np.ndarray, str]:
    """
    The unpenalized MLE, or a ridge-stabilized estimate where it does not exist,
    or zeros if even that fails. Returns the value and how it was obtained.
    """
    try:
        return newton_maximize(objective), 'mle'
    except SolverError as err:
        logger.warning('Unpenalized MLE unavailable (%s): using ridge-stabilized start value', err)
    try:
        return newton_maximize(objective, ridge=RIDGE_FALLBACK), 'ridge'
    except SolverError as err:
        logger.warning('Ridge-stabilized start failed (%s): starting from zeros', err)
    return np.zeros(objective.d), 'zeros'
