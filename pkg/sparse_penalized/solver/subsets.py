"""
    Entropy (L0) penalized fits: the penalty only counts nonzero coefficients, so the
    maximization is a search over supports with an unpenalized MLE on each support.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence

import numpy as np

from sparse_penalized.exceptions import SolverError
from sparse_penalized.models import LikelihoodObjective
from sparse_penalized.penalties import PenaltySpec
from sparse_penalized.solver.data_classes import FitResult, LqaConfig
from sparse_penalized.solver.lqa import PenalizedProblem, make_fit_result
from sparse_penalized.solver.newton import newton_maximize
from sparse_penalized.utilities.error_handling import LogErrors


logger = logging.getLogger(__name__)


def support_mle(objective: LikelihoodObjective, support: Sequence[int]) -> np.ndarray:
    """Unpenalized MLE with all coefficients outside `support` fixed at zero."""
    beta = np.zeros(objective.d)
    if support:
        beta[list(support)] = newton_maximize(objective.restricted(support))
    return beta


def support_criterion(problem: PenalizedProblem, beta: np.ndarray) -> float:
    return problem.value(beta)


def _evaluate(problem: PenalizedProblem, support: tuple[int, ...]) -> tuple[float, np.ndarray] | None:
    with LogErrors(logger, message=f'Support {support} skipped: %s'):
        beta = support_mle(problem.objective, support)
        return support_criterion(problem, beta), beta
    return None


def exhaustive_fit(objective: LikelihoodObjective, penalties: tuple[PenaltySpec, ...]) -> FitResult:
    """
    Enumerate all subsets of the penalized coordinates (unpenalized ones are always included).
    Ties are resolved towards the smaller support.
    """
    problem = PenalizedProblem(objective, penalties)
    always = [j for j, spec in enumerate(penalties) if not spec.penalized]
    candidates = [j for j, spec in enumerate(penalties) if spec.penalized]

    best: tuple[float, np.ndarray] | None = None
    evaluated = 0
    for size in range(len(candidates) + 1):
        for chosen in itertools.combinations(candidates, size):
            support = tuple(sorted(always + list(chosen)))
            evaluated += 1
            if (result := _evaluate(problem, support)) is None:
                continue
            if best is None or result[0] > best[0]:
                best = result

    if best is None:
        raise SolverError('No support could be fitted')
    logger.debug('Exhaustive entropy fit: %i supports evaluated', evaluated)
    return make_fit_result(problem, best[1], iterations=evaluated, converged=True, trace=[best[0]], start='exhaustive')


def backward_elimination_fit(objective: LikelihoodObjective, penalties: tuple[PenaltySpec, ...]) -> FitResult:
    """
    Start with all coordinates and greedily delete the penalized one whose removal gains most,
    as long as the criterion does not decrease.
    """
    problem = PenalizedProblem(objective, penalties)
    support = list(range(objective.d))
    start = _evaluate(problem, tuple(support))
    if start is None:
        raise SolverError('The full model could not be fitted')
    current, beta = start
    trace = [current]

    while True:
        best = None
        for j in support:
            if not penalties[j].penalized:
                continue
            reduced = tuple(k for k in support if k != j)
            if (result := _evaluate(problem, reduced)) is None:
                continue
            if result[0] >= current and (best is None or result[0] > best[1][0]):
                best = (j, result)
        if best is None:
            break
        j, (current, beta) = best
        support.remove(j)
        trace.append(current)

    return make_fit_result(problem, beta, iterations=len(trace), converged=True, trace=trace, start='backward')


def entropy_fit(objective: LikelihoodObjective, penalties: tuple[PenaltySpec, ...], config: LqaConfig) -> FitResult:
    penalized_count = sum(spec.penalized for spec in penalties)
    if penalized_count <= config.exhaustive_max_d:
        return exhaustive_fit(objective, penalties)
    logger.info(
        'Entropy penalty on %i coordinates exceeds exhaustive_max_d=%i: using backward elimination',
        penalized_count,
        config.exhaustive_max_d,
    )
    return backward_elimination_fit(objective, penalties)
