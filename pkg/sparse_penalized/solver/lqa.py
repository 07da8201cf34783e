"""
    Local quadratic approximation (LQA) solver for penalized likelihoods

    Maximizes F(beta) = n^-1 loglik(beta) - sum_j p_j(|beta_j|). Each iteration replaces the
    penalty by its local quadratic around the current iterate and takes one Newton step of the
    resulting working problem, followed by a guarded Newton polish on the exact penalized
    likelihood equation. Penalized coordinates that come within `clamp_tau` of zero are deleted
    for the rest of the run. At convergence each penalized coordinate is compared with zero,
    which makes keep-or-kill decisions of nonconvex penalties global in the separable case.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from sparse_penalized.exceptions import ContractError, SolverError
from sparse_penalized.models import LikelihoodObjective
from sparse_penalized.penalties import (
    PenaltyKind,
    PenaltySpec,
    penalty_deriv,
    penalty_deriv_at_zero_plus,
    penalty_second_deriv,
    total_penalty,
)
from sparse_penalized.solver.data_classes import FitResult, InitKind, LqaConfig
from sparse_penalized.solver.newton import start_value


logger = logging.getLogger(__name__)

JITTER_RETRIES = 8
ASCENT_SLACK = 1e-10
MAX_POLISH_ROUNDS = 5


def check_penalties(objective: LikelihoodObjective, penalties: Sequence[PenaltySpec]) -> tuple[PenaltySpec, ...]:
    penalties = tuple(penalties)
    if len(penalties) != objective.d:
        raise ContractError(f'Need one penalty per coefficient: got {len(penalties)} for d={objective.d}')
    kinds = {spec.kind for spec in penalties if spec.penalized}
    if PenaltyKind.ENTROPY in kinds and len(kinds) > 1:
        raise ContractError(f'The entropy penalty can not be mixed with other kinds: {sorted(kinds)}')
    return penalties


class PenalizedProblem:
    """Penalized objective with cached evaluation helpers for one fit() call."""

    def __init__(self, objective: LikelihoodObjective, penalties: tuple[PenaltySpec, ...]):
        self.objective = objective
        self.penalties = penalties
        self.n = objective.n
        self.penalized = np.array([spec.penalized for spec in penalties])
        # Coordinates that a penalty can set exactly to zero:
        self.sparse = np.array([spec.penalized and penalty_deriv_at_zero_plus(spec) > 0 for spec in penalties])

    def value(self, beta: np.ndarray) -> float:
        loglik = self.objective.loglik(beta)
        if not np.isfinite(loglik):
            return -np.inf
        return loglik / self.n - total_penalty(self.penalties, beta)

    def derivs(self, beta: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """p', p'' and p'/|b| on the given (nonzero) coordinates."""
        first, second = np.zeros(len(indices)), np.zeros(len(indices))
        for k, j in enumerate(indices):
            spec, t = self.penalties[j], abs(float(beta[j]))
            if spec.penalized:
                first[k] = penalty_deriv(spec, t)
                second[k] = penalty_second_deriv(spec, t)
        magnitude = np.abs(beta[indices])
        sigma = np.divide(first, magnitude, out=np.zeros_like(first), where=magnitude > 0)
        return first, second, sigma

    def residual(self, beta: np.ndarray, gradient: np.ndarray, indices: np.ndarray) -> np.ndarray:
        """d/d beta_j of loglik - n * sum p, un-averaged."""
        if len(indices) == 0:
            return np.zeros(0)
        nonzero = indices[beta[indices] != 0]
        result = gradient[indices].copy()
        first, _, _ = self.derivs(beta, nonzero)
        positions = np.searchsorted(indices, nonzero)
        result[positions] -= self.n * first * np.sign(beta[nonzero])
        return result


def solve_jittered(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """
    Solve the positive (semi)definite system matrix @ x = rhs by Cholesky,
    adding an escalating ridge to the diagonal while the factorization fails.
    """
    jitter = 0.0
    base = 1e-6 * max(float(np.max(np.abs(np.diag(matrix)), initial=0.0)), 1.0)
    for attempt in range(JITTER_RETRIES + 1):
        try:
            factor = cho_factor(matrix + jitter * np.eye(len(rhs)))
        except LinAlgError:
            jitter = base if jitter == 0 else jitter * 10
            continue
        solution = cho_solve(factor, rhs)
        if np.all(np.isfinite(solution)):
            if attempt:
                logger.info('Working system solved with ridge jitter %g', jitter)
            return solution
        jitter = base if jitter == 0 else jitter * 10
    raise SolverError('Working system is singular even after ridge jitter')


def initial_beta(objective: LikelihoodObjective, config: LqaConfig) -> tuple[np.ndarray, str]:
    match config.init:
        case InitKind.USER:
            beta = np.array(config.beta0, dtype=float)
            if beta.shape != (objective.d,):
                raise ContractError(f'beta0 must have {objective.d} entries, got {beta.shape[0]}')
            return beta, 'user'
        case InitKind.ZEROS:
            return np.zeros(objective.d), 'zeros'
    return start_value(objective)


def _lqa_step(problem: PenalizedProblem, beta: np.ndarray, free: np.ndarray, gradient, hessian) -> np.ndarray:
    n = problem.n
    _, _, sigma = problem.derivs(beta, free)
    b = beta[free]
    matrix = np.diag(sigma) - hessian[np.ix_(free, free)] / n
    step = solve_jittered(matrix, gradient[free] / n - sigma * b)
    candidate = beta.copy()
    candidate[free] = b + step
    return candidate


def _polish(problem: PenalizedProblem, beta: np.ndarray, free: np.ndarray) -> np.ndarray | None:
    """
    Newton steps on the exact penalized likelihood equation of the nonzero coordinates.
    A sparse coordinate that would cross zero leaves its smooth branch: it is set to zero and
    the step is recomputed without it. Returns None where the local problem is not concave.
    """
    candidate = beta.copy()
    gradient, hessian = problem.objective.score_hessian(beta)
    for _ in range(MAX_POLISH_ROUNDS):
        nonzero = free[candidate[free] != 0]
        if len(nonzero) == 0:
            return candidate
        if not np.array_equal(candidate, beta):
            gradient, hessian = problem.objective.score_hessian(candidate)
        first, second, _ = problem.derivs(candidate, nonzero)
        signs = np.sign(candidate[nonzero])
        equation = gradient[nonzero] / problem.n - first * signs
        jacobian = hessian[np.ix_(nonzero, nonzero)] / problem.n - np.diag(second)
        try:
            np.linalg.cholesky(-jacobian)
        except np.linalg.LinAlgError:
            return None
        step = -np.linalg.solve(jacobian, equation)
        proposal = candidate[nonzero] + step
        flipped = problem.sparse[nonzero] & (np.sign(proposal) != signs)
        if not flipped.any():
            candidate[nonzero] = proposal
            return candidate
        candidate[nonzero[flipped]] = 0.0
    return candidate


def _zero_comparison(problem: PenalizedProblem, beta: np.ndarray, free: np.ndarray, current: float) -> int | None:
    """The penalized coordinate whose deletion gains most (ties delete), if any."""
    best_index, best_value = None, -np.inf
    for j in free:
        if not problem.sparse[j] or beta[j] == 0:
            continue
        candidate = beta.copy()
        candidate[j] = 0.0
        value = problem.value(candidate)
        if value >= current and value > best_value:
            best_index, best_value = int(j), value
    return best_index


def lqa_fit(objective: LikelihoodObjective, penalties: Sequence[PenaltySpec], config: LqaConfig) -> FitResult:
    penalties = check_penalties(objective, penalties)
    problem = PenalizedProblem(objective, penalties)
    n = objective.n

    beta, start = initial_beta(objective, config)
    tau = config.clamp_tau
    if tau is None:
        scale = float(np.max(np.abs(beta), initial=0.0))
        tau = 1e-6 * scale if scale > 0 else 1e-6

    clamped = problem.penalized & (np.abs(beta) <= tau)
    beta[clamped] = 0.0
    current = problem.value(beta)
    if not np.isfinite(current):
        raise SolverError(f'Penalized objective is not finite at the start value ({start})')
    trace = [current]

    converged = False
    iteration = 0
    while iteration < config.max_iter:
        iteration += 1
        free = np.flatnonzero(~clamped)
        if len(free) == 0:
            converged = True
            break

        gradient, hessian = objective.score_hessian(beta)
        proposal = _lqa_step(problem, beta, free, gradient, hessian)

        # Step halving on the true penalized objective:
        direction = proposal - beta
        for _ in range(config.max_halvings):
            candidate = beta + direction
            value = problem.value(candidate)
            if value >= current - ASCENT_SLACK * max(1.0, abs(current)):
                break
            direction = direction / 2
        else:
            candidate, value = beta, current

        if (polished := _polish(problem, candidate, free)) is not None:
            polished_value = problem.value(polished)
            if polished_value >= value - ASCENT_SLACK * max(1.0, abs(value)):
                candidate, value = polished, polished_value

        newly_clamped = problem.penalized & ~clamped & (np.abs(candidate) <= tau)
        if newly_clamped.any():
            candidate = candidate.copy()
            candidate[newly_clamped] = 0.0
            clamped |= newly_clamped
            value = problem.value(candidate)

        change = float(np.max(np.abs(candidate - beta)))
        beta, current = candidate, value
        trace.append(current)

        free = np.flatnonzero(~clamped)
        gradient, _ = objective.score_hessian(beta)
        residual = problem.residual(beta, gradient, free)
        residual_norm = float(np.max(np.abs(residual), initial=0.0))
        logger.debug(
            'LQA iteration %i: objective=%.12g change=%.3g residual=%.3g free=%i',
            iteration,
            current,
            change,
            residual_norm,
            len(free),
        )

        if change <= config.tol and residual_norm <= config.tol * n:
            if (j := _zero_comparison(problem, beta, free, current)) is not None:
                logger.debug('Deleting coordinate %i: zero gives the larger objective', j)
                beta = beta.copy()
                beta[j] = 0.0
                clamped[j] = True
                current = problem.value(beta)
                trace.append(current)
                continue
            converged = True
            break

    if not converged:
        logger.warning('LQA did not converge in %i iterations', config.max_iter)

    return make_fit_result(
        problem,
        beta,
        iterations=iteration,
        converged=converged,
        trace=trace,
        start=start,
    )


def make_fit_result(
    problem: PenalizedProblem,
    beta: np.ndarray,
    *,
    iterations: int,
    converged: bool,
    trace: Sequence[float],
    start: str,
) -> FitResult:
    active = np.flatnonzero(beta != 0)
    sigma_lambda = np.zeros(len(beta))
    if len(active):
        _, _, sigma = problem.derivs(beta, active)
        sigma_lambda[active] = sigma
    return FitResult(
        beta=beta,
        active_set=tuple(int(j) for j in active),
        objective=float(problem.value(beta)),
        loglik=float(problem.objective.loglik(beta)),
        iterations=iterations,
        converged=converged,
        sigma_lambda=sigma_lambda,
        trace=tuple(float(value) for value in trace),
        penalties=problem.penalties,
        n=problem.n,
        start=start,
    )
