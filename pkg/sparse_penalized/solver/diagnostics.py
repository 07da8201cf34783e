from __future__ import annotations

import dataclasses
import logging
from collections.abc import Sequence

import numpy as np

from sparse_penalized.exceptions import ContractError
from sparse_penalized.models import LikelihoodObjective
from sparse_penalized.penalties import PenaltySpec, penalty_deriv
from sparse_penalized.solver.data_classes import FitResult
from sparse_penalized.solver.lqa import PenalizedProblem, check_penalties


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class StationarityReport:
    indices: tuple[int, ...]  # active coordinates
    residual: np.ndarray  # d loglik / d beta_j - n p'(|beta_j|) sgn(beta_j)
    max_norm: float

    def as_dict(self) -> dict:
        return {'indices': list(self.indices), 'residual': self.residual.tolist(), 'max_norm': self.max_norm}


def stationarity_residual(
    fit: FitResult,
    objective: LikelihoodObjective,
    penalties: Sequence[PenaltySpec] | None = None,
) -> StationarityReport:
    """
    Residual of the penalized likelihood equation on the active set, un-averaged
    (compare with tol * n).
    """
    penalties = check_penalties(objective, fit.penalties if penalties is None else penalties)
    problem = PenalizedProblem(objective, penalties)
    beta = np.array(fit.beta)
    indices = np.array(fit.active_set, dtype=int)
    gradient, _ = objective.score_hessian(beta)
    residual = problem.residual(beta, gradient, indices)
    return StationarityReport(
        indices=tuple(int(j) for j in indices),
        residual=residual,
        max_norm=float(np.max(np.abs(residual), initial=0.0)),
    )


@dataclasses.dataclass(frozen=True)
class PenaltyDiagnostics:
    a_n: float  # max p'(|beta_j|) over nonzero beta_j
    b_n: float  # max |p''(|beta_j|)| over nonzero beta_j

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


def penalty_diagnostics(penalties: Sequence[PenaltySpec], beta) -> PenaltyDiagnostics:
    """
    First and second penalty derivatives at the nonzero (true) coefficients.
    The second derivative is a central difference of p', which handles the piecewise forms.

    >>> from sparse_penalized.penalties import PenaltyKind
    >>> penalty_diagnostics([PenaltySpec(kind=PenaltyKind.L1, lam=0.1)] * 2, [0.0, 3.0])
    PenaltyDiagnostics(a_n=0.1, b_n=0.0)
    """
    beta = np.asarray(beta, dtype=float)
    if len(penalties) != beta.shape[0]:
        raise ContractError(f'Need one penalty per coefficient: got {len(penalties)} for {beta.shape[0]}')
    nonzero = np.flatnonzero(beta)
    if len(nonzero) == 0:
        raise ContractError('penalty_diagnostics() needs at least one nonzero coefficient')

    a_n, b_n = 0.0, 0.0
    for j in nonzero:
        spec, t = penalties[j], abs(float(beta[j]))
        h = 1e-6 * t
        a_n = max(a_n, penalty_deriv(spec, t))
        second = (penalty_deriv(spec, t + h) - penalty_deriv(spec, t - h)) / (2 * h)
        b_n = max(b_n, abs(second))
    return PenaltyDiagnostics(a_n=a_n, b_n=b_n)
