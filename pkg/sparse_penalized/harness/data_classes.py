from __future__ import annotations

import dataclasses
import enum
import math
from pathlib import Path

import numpy as np

from sparse_penalized.exceptions import ContractError, InvalidGeneratorParams
from sparse_penalized.models import GlmFamily
from sparse_penalized.models.data_classes import as_readonly
from sparse_penalized.penalties import PenaltyKind


class GeneratorKind(enum.StrEnum):
    LINEAR = 'linear'
    LOGISTIC = 'logistic'
    POISSON = 'poisson'
    SURVIVAL = 'survival'
    FACTOR = 'factor'
    AR = 'ar'


class ExperimentKind(enum.StrEnum):
    THRESHOLD_ORACLE = 'threshold-oracle'
    ORACLE = 'oracle'
    SANDWICH = 'sandwich'
    BEST_SUBSET = 'best-subset'
    COX = 'cox'
    PERSISTENCE = 'persistence'
    UNIVERSAL_THRESHOLD = 'universal-threshold'
    CHOLESKY = 'cholesky'
    FACTOR = 'factor'


def check_positive(field: str, value, *, minimum: float = 0, strict: bool = True) -> None:
    if not isinstance(value, int | float) or not math.isfinite(value):
        raise InvalidGeneratorParams(field=field, error_msg=f'must be a finite number, got {value!r}')
    if value < minimum or (strict and value == minimum):
        relation = '>' if strict else '>='
        raise InvalidGeneratorParams(field=field, error_msg=f'must be {relation} {minimum}, got {value!r}')


@dataclasses.dataclass(frozen=True)
class RegressionParams:
    """
    Rows x ~ N(0, S) with S_ij = rho^|i-j| and responses from the family with
    linear predictor x' beta (Gaussian noise scale `sigma`).
    """

    n: int
    beta: tuple[float, ...]
    sigma: float = 1.0
    rho: float = 0.0
    intercept: float | None = None  # adds a leading all-ones column

    def __post_init__(self):
        check_positive('n', self.n, minimum=1, strict=False)
        if not self.beta:
            raise InvalidGeneratorParams(field='beta', error_msg='needs at least one coefficient')
        object.__setattr__(self, 'beta', tuple(float(b) for b in self.beta))
        if not all(math.isfinite(b) for b in self.beta):
            raise InvalidGeneratorParams(field='beta', error_msg='coefficients must be finite')
        check_positive('sigma', self.sigma, strict=False)
        if not -1 < self.rho < 1:
            raise InvalidGeneratorParams(field='rho', error_msg=f'must be in (-1, 1), got {self.rho!r}')

    @property
    def d(self) -> int:
        return len(self.beta)

    def design_covariance(self) -> np.ndarray:
        lags = np.abs(np.subtract.outer(np.arange(self.d), np.arange(self.d)))
        return self.rho**lags


@dataclasses.dataclass(frozen=True)
class SurvivalParams:
    """Exponential baseline hazard with independent exponential censoring."""

    n: int
    beta: tuple[float, ...]
    baseline_hazard: float = 1.0
    censoring_rate: float = 0.0  # 0: no censoring
    rho: float = 0.0

    def __post_init__(self):
        RegressionParams(n=self.n, beta=self.beta, rho=self.rho)
        object.__setattr__(self, 'beta', tuple(float(b) for b in self.beta))
        check_positive('baseline_hazard', self.baseline_hazard)
        check_positive('censoring_rate', self.censoring_rate, strict=False)

    @property
    def d(self) -> int:
        return len(self.beta)


@dataclasses.dataclass(frozen=True)
class FactorParams:
    """
    Returns Y = F B' + E with K independent factors, loadings B_ij ~ N(loading_mean, loading_sd^2)
    and idiosyncratic variances drawn uniformly from [idiosyncratic_low, idiosyncratic_high].
    """

    n: int
    d: int
    k: int = 3
    loading_mean: float = 1.0
    loading_sd: float = 0.5
    factor_variance: float = 1.0
    idiosyncratic_low: float = 0.5
    idiosyncratic_high: float = 1.5

    def __post_init__(self):
        check_positive('n', self.n, minimum=2, strict=False)
        check_positive('d', self.d, minimum=1, strict=False)
        check_positive('k', self.k, minimum=1, strict=False)
        check_positive('loading_sd', self.loading_sd, strict=False)
        check_positive('factor_variance', self.factor_variance)
        check_positive('idiosyncratic_low', self.idiosyncratic_low, strict=False)
        if self.idiosyncratic_high < self.idiosyncratic_low:
            raise InvalidGeneratorParams(field='idiosyncratic_high', error_msg='must be >= idiosyncratic_low')


@dataclasses.dataclass(frozen=True)
class ArParams:
    """
    W_t = sum_l coefficients[l-1] * W_{t-l} + noise * e_t: the Cholesky factor of the
    covariance is banded with one band per coefficient.
    """

    n: int
    d: int
    coefficients: tuple[float, ...] = (0.5,)
    noise: float = 1.0

    def __post_init__(self):
        check_positive('n', self.n, minimum=1, strict=False)
        check_positive('d', self.d, minimum=1, strict=False)
        object.__setattr__(self, 'coefficients', tuple(float(c) for c in self.coefficients))
        check_positive('noise', self.noise)

    def phi(self) -> np.ndarray:
        phi = np.zeros((self.d, self.d))
        for lag, coefficient in enumerate(self.coefficients, start=1):
            phi += np.diag(np.full(max(self.d - lag, 0), coefficient), k=-lag)
        return phi

    def covariance(self) -> np.ndarray:
        L = np.eye(self.d) - self.phi()
        inverse = np.linalg.inv(L)
        return self.noise**2 * inverse @ inverse.T


@dataclasses.dataclass(frozen=True, eq=False)
class CovarianceSample:
    """Draws W (n x d) with their true covariance and, for AR draws, the true phi."""

    W: np.ndarray
    sigma: np.ndarray
    phi: np.ndarray | None = None
    factors: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, 'W', as_readonly(self.W, name='W', ndim=2))


GLM_GENERATORS = {
    GeneratorKind.LINEAR: GlmFamily.GAUSSIAN,
    GeneratorKind.LOGISTIC: GlmFamily.LOGISTIC,
    GeneratorKind.POISSON: GlmFamily.POISSON,
}


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """
    One experiment run. `replicates`, `n` and `d` default per experiment kind.
    """

    kind: ExperimentKind
    seed: int
    replicates: int | None = None
    n: int | None = None
    d: int | None = None
    penalty_kind: PenaltyKind | None = None
    grid_size: int = 50
    workers: int | None = None
    out: Path | None = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', ExperimentKind(self.kind))
        if self.penalty_kind is not None:
            object.__setattr__(self, 'penalty_kind', PenaltyKind(self.penalty_kind))
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise ContractError(f'seed must be an integer >= 0, got {self.seed!r}')
        for name in ('replicates', 'n', 'd', 'workers'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ContractError(f'{name} must be >= 1, got {value!r}')
        if self.grid_size < 1:
            raise ContractError(f'grid_size must be >= 1, got {self.grid_size!r}')
        if self.out is not None:
            object.__setattr__(self, 'out', Path(self.out))
