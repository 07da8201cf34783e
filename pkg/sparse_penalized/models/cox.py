"""
    Cox proportional hazards partial likelihood with Breslow handling of tied failure times.

    All sums over risk sets are computed as reversed cumulative sums over the subjects
    sorted by observed time, kept in log space so that no risk set weight sum underflows.
"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np

from sparse_penalized.exceptions import ContractError, NoFailuresError
from sparse_penalized.models.data_classes import as_readonly, check_design
from sparse_penalized.models.likelihoods import check_beta


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class SurvivalData:
    """
    Covariates X (n x d), observed times Z = min(T, C) and status = I(T <= C).
    """

    X: np.ndarray
    time: np.ndarray
    status: np.ndarray

    def __post_init__(self):
        X = as_readonly(self.X, name='X', ndim=2)
        time = as_readonly(self.time, name='time', ndim=1)
        status = as_readonly(self.status, name='status', ndim=1)
        check_design(X)
        n = X.shape[0]
        if time.shape[0] != n or status.shape[0] != n:
            raise ContractError(f'time and status need {n} entries, got {time.shape[0]} and {status.shape[0]}')
        if np.any(time <= 0):
            raise ContractError('Observed times must be positive')
        if not set(np.unique(status).tolist()) <= {0.0, 1.0}:
            raise ContractError('status must contain only 0 (censored) and 1 (failure)')
        object.__setattr__(self, 'X', X)
        object.__setattr__(self, 'time', time)
        object.__setattr__(self, 'status', status)

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def d(self) -> int:
        return int(self.X.shape[1])

    @property
    def failure_count(self) -> int:
        return int(self.status.sum())


@dataclasses.dataclass(frozen=True)
class RiskSetIndex:
    """
    Distinct ordered failure times, the subjects failing at each of them
    and the risk set {i : time_i >= t} right before each time (0-based subject indices).
    """

    failure_times: tuple[float, ...]
    failures: tuple[tuple[int, ...], ...]
    risk_sets: tuple[tuple[int, ...], ...]


def check_failures(data: SurvivalData) -> None:
    if data.failure_count == 0:
        raise NoFailuresError('All observations are censored: the partial likelihood is empty')


def build_risk_sets(data: SurvivalData) -> RiskSetIndex:
    """
    >>> build_risk_sets(SurvivalData(X=[[0.0], [0.0], [0.0]], time=[2, 1, 3], status=[1, 1, 0]))
    RiskSetIndex(failure_times=(1.0, 2.0), failures=((1,), (0,)), risk_sets=((0, 1, 2), (0, 2)))
    """
    check_failures(data)
    failed = data.status == 1
    failure_times = np.unique(data.time[failed])
    failures = []
    risk_sets = []
    for t in failure_times:
        failures.append(tuple(int(i) for i in np.flatnonzero(failed & (data.time == t))))
        risk_sets.append(tuple(int(i) for i in np.flatnonzero(data.time >= t)))
    return RiskSetIndex(
        failure_times=tuple(float(t) for t in failure_times),
        failures=tuple(failures),
        risk_sets=tuple(risk_sets),
    )


@dataclasses.dataclass(frozen=True)
class _RiskSums:
    order: np.ndarray  # subjects sorted by time
    starts: np.ndarray  # per sorted subject: first sorted position of its risk set
    failed: np.ndarray  # per sorted subject: status == 1
    eta: np.ndarray  # sorted linear predictor
    log_suffix: np.ndarray  # per sorted position k: log sum_{j >= k} exp(eta_j)

    @property
    def log_s0(self) -> np.ndarray:
        """Per sorted subject: log of the weight sum over its risk set."""
        return self.log_suffix[self.starts]


def _risk_sums(beta, data: SurvivalData) -> _RiskSums:
    beta = check_beta(beta, data.d)
    order = np.argsort(data.time, kind='stable')
    time = data.time[order]
    eta = data.X[order] @ beta
    return _RiskSums(
        order=order,
        starts=np.searchsorted(time, time, side='left'),
        failed=data.status[order] == 1,
        eta=eta,
        log_suffix=np.logaddexp.accumulate(eta[::-1])[::-1],
    )


def partial_loglik(beta, data: SurvivalData) -> float:
    """
    sum over failures of [x_i' beta - log sum_{k in R(t_i)} exp(x_k' beta)]

    >>> round(partial_loglik([0.0], SurvivalData(X=[[1.0], [2.0]], time=[1, 2], status=[1, 1])), 6)
    -0.693147
    """
    sums = _risk_sums(beta, data)
    return float(np.sum(sums.eta[sums.failed] - sums.log_s0[sums.failed]))


def _risk_set_means(sums: _RiskSums, X_sorted: np.ndarray) -> np.ndarray:
    """
    Weighted covariate mean over the risk set of every sorted subject, built backwards:
    the mean over positions >= k mixes x_k with the mean over positions > k.
    """
    share = np.exp(sums.eta - sums.log_suffix)  # weight of position k within its suffix, in (0, 1]
    suffix_means = np.empty_like(X_sorted, dtype=float)
    current = np.zeros(X_sorted.shape[1])
    for k in range(len(share) - 1, -1, -1):
        current = share[k] * X_sorted[k] + (1 - share[k]) * current
        suffix_means[k] = current
    return suffix_means[sums.starts]


def partial_loglik_derivatives(beta, data: SurvivalData) -> tuple[float, np.ndarray, np.ndarray]:
    """
    Value, gradient and Hessian of `partial_loglik()`.
    """
    sums = _risk_sums(beta, data)
    X_sorted = data.X[sums.order]
    failed = sums.failed
    log_s0 = sums.log_s0

    value = float(np.sum(sums.eta[failed] - log_s0[failed]))

    means = _risk_set_means(sums, X_sorted)
    gradient = np.sum(X_sorted[failed] - means[failed], axis=0)

    # sum over failures f of S2(f)/S0(f) == X' diag(c) X with
    # c_i = sum over failures f whose risk set contains i of exp(eta_i - log S0(f)):
    log_inverse_s0 = np.full(data.n, -np.inf)
    np.logaddexp.at(log_inverse_s0, sums.starts[failed], -log_s0[failed])
    coefficients = np.exp(sums.eta + np.logaddexp.accumulate(log_inverse_s0))
    second_moment = (X_sorted.T * coefficients) @ X_sorted
    hessian = -(second_moment - means[failed].T @ means[failed])
    hessian = (hessian + hessian.T) / 2
    return value, gradient, hessian


def partial_loglik_gradient(beta, data: SurvivalData) -> np.ndarray:
    return partial_loglik_derivatives(beta, data)[1]


def partial_loglik_hessian(beta, data: SurvivalData) -> np.ndarray:
    return partial_loglik_derivatives(beta, data)[2]


def cox_observation_scores(beta, data: SurvivalData) -> np.ndarray:
    """
    Per-subject score contributions status_i * (x_i - xbar(t_i)), rows in input order.
    They sum to the gradient of the partial likelihood.
    """
    sums = _risk_sums(beta, data)
    X_sorted = data.X[sums.order]
    means = _risk_set_means(sums, X_sorted)
    scores_sorted = (X_sorted - means) * sums.failed[:, np.newaxis]
    scores = np.empty_like(scores_sorted)
    scores[sums.order] = scores_sorted
    return scores
