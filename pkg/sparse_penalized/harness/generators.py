"""
    Reproducible synthetic data for the experiments and the `simulate` command.

    Every generator draws from a numpy Generator on the PCG64 bit generator, seeded from one
    integer; experiments derive per-replicate streams with SeedSequence.spawn().
"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np
from scipy.special import expit

from sparse_penalized.exceptions import ContractError, InvalidGeneratorParams
from sparse_penalized.harness.data_classes import (
    GLM_GENERATORS,
    ArParams,
    CovarianceSample,
    FactorParams,
    GeneratorKind,
    RegressionParams,
    SurvivalParams,
)
from sparse_penalized.models import Dataset, GlmFamily, SurvivalData


logger = logging.getLogger(__name__)

GeneratorParams = RegressionParams | SurvivalParams | FactorParams | ArParams

PARAM_CLASSES = {
    GeneratorKind.LINEAR: RegressionParams,
    GeneratorKind.LOGISTIC: RegressionParams,
    GeneratorKind.POISSON: RegressionParams,
    GeneratorKind.SURVIVAL: SurvivalParams,
    GeneratorKind.FACTOR: FactorParams,
    GeneratorKind.AR: ArParams,
}


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    return [make_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]


def correlated_design(n: int, covariance: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Rows N(0, covariance) through the Cholesky factor."""
    root = np.linalg.cholesky(covariance)
    return rng.standard_normal(size=(n, len(covariance))) @ root.T


def draw_regression(family: GlmFamily, params: RegressionParams, rng: np.random.Generator) -> Dataset:
    X = correlated_design(params.n, params.design_covariance(), rng)
    eta = X @ np.array(params.beta)
    if params.intercept is not None:
        X = np.column_stack([np.ones(params.n), X])
        eta = eta + params.intercept
    match family:
        case GlmFamily.GAUSSIAN:
            y = eta + params.sigma * rng.standard_normal(params.n)
        case GlmFamily.LOGISTIC:
            y = (rng.random(params.n) < expit(eta)).astype(float)
        case GlmFamily.POISSON:
            y = rng.poisson(np.exp(eta)).astype(float)
        case _:
            raise NotImplementedError(family)
    return Dataset(X=X, y=y)


def draw_survival(params: SurvivalParams, rng: np.random.Generator) -> SurvivalData:
    """Hazard h(t | x) = baseline_hazard * exp(x' beta), censoring independent of the failure time."""
    covariance = RegressionParams(n=params.n, beta=params.beta, rho=params.rho).design_covariance()
    X = correlated_design(params.n, covariance, rng)
    rates = params.baseline_hazard * np.exp(X @ np.array(params.beta))
    failure = rng.exponential(size=params.n) / rates
    if params.censoring_rate > 0:
        censoring = rng.exponential(scale=1 / params.censoring_rate, size=params.n)
    else:
        censoring = np.full(params.n, np.inf)
    status = (failure <= censoring).astype(float)
    return SurvivalData(X=X, time=np.minimum(failure, censoring), status=status)


def draw_factor(params: FactorParams, rng: np.random.Generator) -> CovarianceSample:
    B = rng.normal(loc=params.loading_mean, scale=params.loading_sd, size=(params.d, params.k))
    sigma0 = rng.uniform(params.idiosyncratic_low, params.idiosyncratic_high, size=params.d)
    F = np.sqrt(params.factor_variance) * rng.standard_normal(size=(params.n, params.k))
    Y = F @ B.T + rng.standard_normal(size=(params.n, params.d)) * np.sqrt(sigma0)
    sigma = params.factor_variance * B @ B.T + np.diag(sigma0)
    return CovarianceSample(W=Y, sigma=sigma, factors=F)


def draw_ar(params: ArParams, rng: np.random.Generator) -> CovarianceSample:
    phi = params.phi()
    W = params.noise * rng.standard_normal(size=(params.n, params.d))
    for t in range(1, params.d):
        W[:, t] += W[:, :t] @ phi[t, :t]
    return CovarianceSample(W=W, sigma=params.covariance(), phi=phi)


def check_params(kind: GeneratorKind, params: GeneratorParams) -> None:
    expected = PARAM_CLASSES[kind]
    if not isinstance(params, expected):
        raise InvalidGeneratorParams(
            field='params',
            error_msg=f'{kind} needs {expected.__name__}, got {type(params).__name__}',
        )


def draw(kind: GeneratorKind, params: GeneratorParams, rng: np.random.Generator):
    kind = GeneratorKind(kind)
    check_params(kind, params)
    match kind:
        case GeneratorKind.LINEAR | GeneratorKind.LOGISTIC | GeneratorKind.POISSON:
            return draw_regression(GLM_GENERATORS[kind], params, rng)
        case GeneratorKind.SURVIVAL:
            return draw_survival(params, rng)
        case GeneratorKind.FACTOR:
            return draw_factor(params, rng)
        case GeneratorKind.AR:
            return draw_ar(params, rng)
    raise NotImplementedError(kind)


def generate(kind: GeneratorKind, params: GeneratorParams, seed: int) -> Dataset | SurvivalData | CovarianceSample:
    """
    Dataset for regression kinds, SurvivalData for `survival` and a CovarianceSample
    (sample matrix plus truth) for `factor` and `ar`.
    """
    if not isinstance(seed, int) or seed < 0:
        raise ContractError(f'seed must be an integer >= 0, got {seed!r}')
    logger.debug('Generate %s data with seed %i: %r', kind, seed, params)
    return draw(kind, params, make_rng(seed))


def regression_generator(params: RegressionParams, family: GlmFamily = GlmFamily.GAUSSIAN):
    """A (size, rng) -> Dataset callable, e.g. for Monte Carlo risk estimates."""

    def generate_dataset(size: int, rng: np.random.Generator) -> Dataset:
        return draw_regression(family, dataclasses.replace(params, n=size), rng)

    return generate_dataset
