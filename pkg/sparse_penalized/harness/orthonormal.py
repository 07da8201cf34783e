"""
    Penalized least squares on an orthonormal design.

    With n^-1 X'X = I the PLS objective separates: beta_j minimizes
    (z_j - beta_j)^2 / 2 + p_lam(|beta_j|) with z = n^-1 X'y, the least squares estimate.
"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np

from sparse_penalized.exceptions import ContractError
from sparse_penalized.penalties import PenaltySpec, threshold_array, universal_lambda


logger = logging.getLogger(__name__)


def orthonormal_design(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """X = sqrt(n) Q from the QR decomposition of a Gaussian matrix, so X'X / n = I."""
    if d > n:
        raise ContractError(f'An orthonormal design needs d <= n, got n={n}, d={d}')
    q, r = np.linalg.qr(rng.standard_normal(size=(n, d)))
    # Fix the signs, so the result is a function of the draw only:
    return np.sqrt(n) * q * np.sign(np.diag(r))


def least_squares_coefficients(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    return X.T @ y / X.shape[0]


def fit_orthonormal(
    z,
    spec: PenaltySpec,
    *,
    use_universal: bool = False,
    n: int | None = None,
    sigma: float = 1.0,
) -> np.ndarray:
    """
    Componentwise thresholding of the coefficient-scale observations z.
    With use_universal the level lam = sigma * sqrt(2 log(n) / n) replaces spec.lam.

    >>> fit_orthonormal([0.0, 0.0], PenaltySpec(kind='l1', lam=1.0))
    array([0., 0.])
    """
    z = np.asarray(z, dtype=float)
    if use_universal:
        if n is None:
            raise ContractError('The universal threshold needs the sample size n')
        lam = universal_lambda(sigma, n)
        logger.debug('Universal threshold lambda=%g (n=%i, sigma=%g)', lam, n, sigma)
        spec = dataclasses.replace(spec, lam=lam)
    return threshold_array(spec, z)
