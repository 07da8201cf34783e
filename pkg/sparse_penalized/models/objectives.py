"""
    One interface for everything the LQA solver maximizes: GLM likelihoods, the Cox partial
    likelihood and negative empirical risks. All values are un-averaged (summed over observations).
"""

from __future__ import annotations

import abc
import logging

import numpy as np

from sparse_penalized.models.cox import (
    SurvivalData,
    check_failures,
    cox_observation_scores,
    partial_loglik,
    partial_loglik_derivatives,
)
from sparse_penalized.models.data_classes import Dataset, GlmFamily, validate_response
from sparse_penalized.models.likelihoods import avg_loglik, observation_scores, score_and_hessian


logger = logging.getLogger(__name__)


class LikelihoodObjective(abc.ABC):
    name: str

    @property
    @abc.abstractmethod
    def n(self) -> int:
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def d(self) -> int:
        raise NotImplementedError

    @abc.abstractmethod
    def loglik(self, beta: np.ndarray) -> float:
        raise NotImplementedError

    @abc.abstractmethod
    def score_hessian(self, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    @abc.abstractmethod
    def observation_scores(self, beta: np.ndarray) -> np.ndarray:
        """n x d matrix of per-observation score contributions."""
        raise NotImplementedError

    def avg_loglik(self, beta: np.ndarray) -> float:
        return self.loglik(beta) / self.n

    def restricted(self, columns) -> LikelihoodObjective:
        """The same objective over a subset of the coefficients (the others fixed at zero)."""
        raise NotImplementedError(f'{self.name} does not support column subsets')

    def __repr__(self):
        return f'<{self.__class__.__name__} {self.name} n={self.n} d={self.d}>'


class GlmObjective(LikelihoodObjective):
    def __init__(self, family: GlmFamily, data: Dataset):
        self.family = GlmFamily(family)
        y = validate_response(self.family, data.y)
        self.data = data if y is data.y else data.with_response(y)
        self.name = str(self.family)

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def d(self) -> int:
        return self.data.d

    def loglik(self, beta: np.ndarray) -> float:
        return avg_loglik(self.family, beta, self.data) * self.n

    def score_hessian(self, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        gradient, hessian = score_and_hessian(self.family, beta, self.data)
        return gradient * self.n, hessian * self.n

    def observation_scores(self, beta: np.ndarray) -> np.ndarray:
        return observation_scores(self.family, beta, self.data)

    def restricted(self, columns) -> GlmObjective:
        return GlmObjective(self.family, self.data.subset(columns))


class CoxObjective(LikelihoodObjective):
    name = 'cox'

    def __init__(self, data: SurvivalData):
        check_failures(data)
        self.data = data

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def d(self) -> int:
        return self.data.d

    def loglik(self, beta: np.ndarray) -> float:
        return partial_loglik(beta, self.data)

    def score_hessian(self, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        _, gradient, hessian = partial_loglik_derivatives(beta, self.data)
        return gradient, hessian

    def observation_scores(self, beta: np.ndarray) -> np.ndarray:
        return cox_observation_scores(beta, self.data)

    def restricted(self, columns) -> CoxObjective:
        columns = list(columns)
        return CoxObjective(SurvivalData(X=self.data.X[:, columns], time=self.data.time, status=self.data.status))
