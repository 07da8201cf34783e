from __future__ import annotations

import dataclasses
import enum
import logging

import numpy as np

from sparse_penalized.exceptions import ContractError


logger = logging.getLogger(__name__)


class GlmFamily(enum.StrEnum):
    """GLM family, each with its canonical link."""

    GAUSSIAN = 'gaussian'  # identity
    LOGISTIC = 'logistic'  # logit
    POISSON = 'poisson'  # log


def as_readonly(array, *, name: str, ndim: int) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    if array.ndim != ndim:
        raise ContractError(f'{name} must be {ndim}-dimensional, got shape {array.shape}')
    if not np.all(np.isfinite(array)):
        raise ContractError(f'{name} contains NaN or infinite values')
    array.setflags(write=False)
    return array


def check_design(X: np.ndarray) -> None:
    n, d = X.shape
    if n < 1 or d < 1:
        raise ContractError(f'Design matrix needs n >= 1 rows and d >= 1 columns, got {X.shape}')


@dataclasses.dataclass(frozen=True, eq=False)
class Dataset:
    """
    Design matrix X (n x d), response y and optional nonnegative observation weights.
    The arrays are copied and made read-only.
    """

    X: np.ndarray
    y: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        X = as_readonly(self.X, name='X', ndim=2)
        y = as_readonly(self.y, name='y', ndim=1)
        check_design(X)
        if y.shape[0] != X.shape[0]:
            raise ContractError(f'y has {y.shape[0]} entries, but X has {X.shape[0]} rows')
        object.__setattr__(self, 'X', X)
        object.__setattr__(self, 'y', y)

        if self.weights is not None:
            weights = as_readonly(self.weights, name='weights', ndim=1)
            if weights.shape != y.shape or np.any(weights < 0):
                raise ContractError('weights must be nonnegative with one entry per observation')
            object.__setattr__(self, 'weights', weights)

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def d(self) -> int:
        return int(self.X.shape[1])

    def observation_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.n)
        return self.weights

    def with_response(self, y: np.ndarray) -> Dataset:
        return Dataset(X=self.X, y=y, weights=self.weights)

    def subset(self, columns) -> Dataset:
        return Dataset(X=self.X[:, list(columns)], y=self.y, weights=self.weights)


def validate_response(family: GlmFamily, y: np.ndarray) -> np.ndarray:
    """
    Check the response against the family and return it in canonical coding:
    logistic labels in {-1, 1} are mapped to {0, 1}.
    """
    match family:
        case GlmFamily.GAUSSIAN:
            return y
        case GlmFamily.LOGISTIC:
            values = set(np.unique(y).tolist())
            if values <= {0.0, 1.0}:
                return y
            if values <= {-1.0, 1.0}:
                logger.info('Logistic response coded as -1/1: converted to 0/1')
                return (y + 1) / 2
            raise ContractError(f'Logistic response must be in {{0, 1}} or {{-1, 1}}, got values {sorted(values)}')
        case GlmFamily.POISSON:
            if np.any(y < 0) or np.any(y != np.round(y)):
                raise ContractError('Poisson response must contain nonnegative integers')
            return y
    raise NotImplementedError(family)
