"""
    Penalized empirical risk minimization

        min_beta  n^-1 sum_i loss(y_i, x_i' beta) + sum_j p_j(|beta_j|)

    solved by the LQA solver on the negated risk. Each loss is written as a function of the
    linear predictor eta = x' beta with two derivatives.
"""

from __future__ import annotations

import abc
import dataclasses
import logging
from collections.abc import Sequence

import numpy as np

from sparse_penalized.exceptions import ContractError
from sparse_penalized.losses.q_class import QLoss, QLossKind
from sparse_penalized.models import Dataset, LikelihoodObjective
from sparse_penalized.penalties import PenaltyKind, PenaltySpec, total_penalty
from sparse_penalized.solver import FitResult, LqaConfig, fit


logger = logging.getLogger(__name__)

DEFAULT_HINGE_WIDTH = 1e-3


class ErmLoss(abc.ABC):
    name: str
    labels_required = True  # responses must be -1/1

    @abc.abstractmethod
    def derivatives(self, y: np.ndarray, eta: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Loss, d loss / d eta and d^2 loss / d eta^2 per observation."""
        raise NotImplementedError

    def value(self, y: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return self.derivatives(y, eta)[0]

    def __repr__(self):
        return f'<{self.__class__.__name__}>'


class QuadraticLoss(ErmLoss):
    name = 'quadratic'
    labels_required = False

    def derivatives(self, y, eta):
        residual = y - eta
        return residual**2, -2 * residual, np.full_like(eta, 2.0)


class ExponentialLoss(ErmLoss):
    """
    The exponential q-loss with m = tanh(eta), which equals exp(-y * eta).

    >>> float(ExponentialLoss().value(np.array([1.0]), np.array([0.0]))[0])
    1.0
    """

    name = 'exponential'

    def derivatives(self, y, eta):
        value = np.exp(-y * eta)
        return value, -y * value, y**2 * value


@dataclasses.dataclass(frozen=True, repr=False)
class SmoothedHinge(ErmLoss):
    """
    Huber-smoothed hinge of the margin u = y * eta:
    0 for u >= 1, (1 - u)^2 / (2 delta) for 1 - delta < u < 1 and 1 - u - delta / 2 below.
    """

    delta: float = DEFAULT_HINGE_WIDTH
    name = 'smoothed-hinge'

    def __post_init__(self):
        if not self.delta > 0:
            raise ContractError(f'Smoothing width delta must be > 0, got {self.delta!r}')

    def derivatives(self, y, eta):
        slack = 1 - y * eta
        band = (slack > 0) & (slack < self.delta)
        linear = slack >= self.delta
        value = np.where(linear, slack - self.delta / 2, np.where(band, slack**2 / (2 * self.delta), 0.0))
        first = np.where(linear, -y, np.where(band, -y * slack / self.delta, 0.0))
        second = np.where(band, y**2 / self.delta, 0.0)
        return value, first, second

    def __repr__(self):
        return f'<SmoothedHinge delta={self.delta:g}>'


def hinge_values(y: np.ndarray, eta: np.ndarray) -> np.ndarray:
    return np.maximum(0.0, 1 - y * eta)


def exact_hinge_objective(beta: np.ndarray, data: Dataset, penalties: Sequence[PenaltySpec]) -> float:
    """n^-1 sum_i [1 - y_i x_i' beta]_+ + sum_j p_j(|beta_j|)"""
    return float(np.mean(hinge_values(data.y, data.X @ beta))) + total_penalty(penalties, beta)


def check_labels(y: np.ndarray) -> None:
    if values := set(np.unique(y).tolist()) - {-1.0, 1.0}:
        raise ContractError(f'Classification losses need labels in {{-1, 1}}, got also {sorted(values)}')


def as_erm_loss(loss: QLoss | ErmLoss) -> ErmLoss:
    if isinstance(loss, ErmLoss):
        return loss
    match loss.kind:
        case QLossKind.QUADRATIC:
            return QuadraticLoss()
        case QLossKind.EXPONENTIAL:
            logger.info('Exponential loss: predictions are mapped through m = tanh(x\'beta)')
            return ExponentialLoss()
        case QLossKind.HINGE:
            logger.info('Hinge loss is minimized through its smoothed version (delta=%g)', DEFAULT_HINGE_WIDTH)
            return SmoothedHinge()
        case QLossKind.MISCLASSIFICATION:
            raise ContractError('The misclassification loss has no useful derivative: it can not be minimized')
    raise NotImplementedError(loss.kind)


class LossObjective(LikelihoodObjective):
    """loglik(beta) = -sum_i loss(y_i, x_i' beta)"""

    def __init__(self, loss: ErmLoss, data: Dataset):
        if loss.labels_required:
            check_labels(data.y)
        self.loss = loss
        self.data = data
        self.name = loss.name

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def d(self) -> int:
        return self.data.d

    def loglik(self, beta: np.ndarray) -> float:
        return -float(np.sum(self.loss.value(self.data.y, self.data.X @ beta)))

    def score_hessian(self, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        X = self.data.X
        _, first, second = self.loss.derivatives(self.data.y, X @ beta)
        return -X.T @ first, -(X.T * second) @ X

    def observation_scores(self, beta: np.ndarray) -> np.ndarray:
        _, first, _ = self.loss.derivatives(self.data.y, self.data.X @ beta)
        return -first[:, None] * self.data.X

    def restricted(self, columns) -> LossObjective:
        return LossObjective(self.loss, self.data.subset(columns))


def penalized_erm_fit(
    loss: QLoss | ErmLoss,
    data: Dataset,
    penalties: Sequence[PenaltySpec],
    config: LqaConfig | None = None,
) -> FitResult:
    """
    FitResult.objective is the negated penalized risk. For the hinge the smoothed
    surrogate is minimized and the exact hinge objective is logged alongside.
    """
    erm_loss = as_erm_loss(loss)
    objective = LossObjective(erm_loss, data)
    result = fit(objective, penalties, config)
    if isinstance(erm_loss, SmoothedHinge):
        logger.info(
            'Penalized hinge: smoothed objective %.8g, exact objective %.8g',
            -result.objective,
            exact_hinge_objective(result.beta, data, result.penalties),
        )
    return result


def erm_lambda_max(loss: QLoss | ErmLoss, data: Dataset, unpenalized: Sequence[int] = ()) -> float:
    """
    Smallest L1 level that keeps all penalized coefficients at zero: the largest
    averaged risk gradient at the fit on the unpenalized coordinates alone.
    """
    objective = LossObjective(as_erm_loss(loss), data)
    unpenalized = sorted(set(unpenalized))
    beta = np.zeros(data.d)
    if unpenalized:
        restricted = objective.restricted(unpenalized)
        zero_penalties = [PenaltySpec(kind=PenaltyKind.L1, lam=0.0)] * len(unpenalized)
        beta[unpenalized] = fit(restricted, zero_penalties).beta
    gradient, _ = objective.score_hessian(beta)
    penalized = [j for j in range(data.d) if j not in unpenalized]
    if not penalized:
        return 0.0
    return float(np.max(np.abs(gradient[penalized]))) / data.n
