"""
    Error metrics of covariance estimates against a known truth.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from sparse_penalized.covariance.data_classes import ComparisonReport
from sparse_penalized.covariance.factor import portfolio_risk
from sparse_penalized.exceptions import ContractError


logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-8
PSD_TOLERANCE = -1e-10


def check_symmetric(matrix, *, name: str, d: int | None = None) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ContractError(f'{name} must be a square matrix, got shape {matrix.shape}')
    if d is not None and matrix.shape[0] != d:
        raise ContractError(f'{name} must be {d}x{d}, got shape {matrix.shape}')
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if not np.allclose(matrix, matrix.T, rtol=0, atol=SYMMETRY_TOLERANCE * scale):
        raise ContractError(f'{name} is not symmetric')
    return (matrix + matrix.T) / 2


def inverse_sqrt(matrix: np.ndarray) -> np.ndarray:
    eigenvalues, vectors = np.linalg.eigh(matrix)
    return (vectors / np.sqrt(eigenvalues)) @ vectors.T


def compare_estimators(sigma_true, sigma_hats: Sequence, xi) -> list[ComparisonReport]:
    """
    For each estimate: max_k |lambda_k(hat) - lambda_k(true)|, |xi' hat xi - xi' true xi|,
    tr(S^-1/2 hat S^-1/2 - I)^2 / d and the Frobenius norm of hat^-1 - true^-1.
    """
    sigma_true = check_symmetric(sigma_true, name='Sigma_true')
    d = sigma_true.shape[0]
    true_eigenvalues = np.linalg.eigvalsh(sigma_true)
    scale = max(1.0, float(true_eigenvalues[-1]))
    if true_eigenvalues[0] < PSD_TOLERANCE * scale:
        raise ContractError(f'Sigma_true is not positive semidefinite (smallest eigenvalue {true_eigenvalues[0]:.3g})')
    if true_eigenvalues[0] <= 0:
        raise ContractError('Sigma_true is singular: the precision error is undefined')

    xi = np.asarray(xi, dtype=float)
    if xi.shape != (d,):
        raise ContractError(f'xi must have {d} entries, got shape {xi.shape}')
    if abs(xi.sum() - 1) > 1e-8:
        raise ContractError(f'xi must sum to 1, got {xi.sum()!r}')

    root = inverse_sqrt(sigma_true)
    true_inverse = np.linalg.inv(sigma_true)
    true_risk = portfolio_risk(sigma_true, xi)

    reports = []
    for number, sigma_hat in enumerate(sigma_hats):
        sigma_hat = check_symmetric(sigma_hat, name=f'Sigma_hat[{number}]', d=d)
        eigenvalues = np.linalg.eigvalsh(sigma_hat)
        relative = root @ sigma_hat @ root - np.eye(d)

        if eigenvalues[0] > 1e-12 * max(1.0, abs(eigenvalues[-1])):
            inverse_error = float(np.linalg.norm(np.linalg.inv(sigma_hat) - true_inverse, 'fro'))
        else:
            logger.warning('Sigma_hat[%i] is singular: no inverse error', number)
            inverse_error = float('nan')

        reports.append(
            ComparisonReport(
                max_eigen_deviation=float(np.max(np.abs(eigenvalues - true_eigenvalues))),
                portfolio_risk_error=abs(portfolio_risk(sigma_hat, xi) - true_risk),
                precision_error=float(np.trace(relative @ relative)) / d,
                inverse_frobenius_error=inverse_error,
            )
        )
    return reports
