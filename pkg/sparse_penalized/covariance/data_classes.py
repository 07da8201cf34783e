from __future__ import annotations

import dataclasses

import numpy as np

from sparse_penalized.models.data_classes import as_readonly


@dataclasses.dataclass(frozen=True, eq=False)
class CholeskyCov:
    """
    Modified Cholesky estimate L Sigma L' = D with L = I - phi unit lower triangular.
    phi[t, j] is the coefficient of column j in the autoregression of column t (j < t).
    All matrices are in `column_order`.
    """

    phi: np.ndarray
    d_diag: np.ndarray
    sigma: np.ndarray
    precision: np.ndarray
    column_order: tuple[int, ...]
    row_lambdas: tuple[float, ...] = ()  # chosen base lambda of rows 2..d

    def __post_init__(self):
        object.__setattr__(self, 'phi', as_readonly(self.phi, name='phi', ndim=2))
        object.__setattr__(self, 'd_diag', as_readonly(self.d_diag, name='d_diag', ndim=1))
        object.__setattr__(self, 'sigma', as_readonly(self.sigma, name='sigma', ndim=2))
        object.__setattr__(self, 'precision', as_readonly(self.precision, name='precision', ndim=2))

    @property
    def d(self) -> int:
        return len(self.d_diag)

    @property
    def L(self) -> np.ndarray:
        return np.eye(self.d) - self.phi

    def support(self, atol: float = 0.0) -> np.ndarray:
        """Boolean mask of the nonzero autoregression coefficients."""
        return np.abs(self.phi) > atol

    def as_dict(self) -> dict:
        return {
            'column_order': list(self.column_order),
            'phi': self.phi.tolist(),
            'd_diag': self.d_diag.tolist(),
            'sigma': self.sigma.tolist(),
            'precision': self.precision.tolist(),
            'row_lambdas': list(self.row_lambdas),
        }


@dataclasses.dataclass(frozen=True, eq=False)
class FactorCov:
    """K-factor covariance sigma = B cov_f B' + diag(sigma0)"""

    B: np.ndarray
    cov_f: np.ndarray
    sigma0: np.ndarray  # diagonal of the idiosyncratic covariance
    sigma: np.ndarray
    intercepts: np.ndarray

    def __post_init__(self):
        for name in ('B', 'cov_f', 'sigma'):
            object.__setattr__(self, name, as_readonly(getattr(self, name), name=name, ndim=2))
        for name in ('sigma0', 'intercepts'):
            object.__setattr__(self, name, as_readonly(getattr(self, name), name=name, ndim=1))

    @property
    def d(self) -> int:
        return int(self.B.shape[0])

    @property
    def k(self) -> int:
        return int(self.B.shape[1])

    def as_dict(self) -> dict:
        return {
            'B': self.B.tolist(),
            'cov_f': self.cov_f.tolist(),
            'sigma0': self.sigma0.tolist(),
            'sigma': self.sigma.tolist(),
            'intercepts': self.intercepts.tolist(),
        }


@dataclasses.dataclass(frozen=True)
class ComparisonReport:
    max_eigen_deviation: float
    portfolio_risk_error: float
    precision_error: float
    inverse_frobenius_error: float  # nan if the estimate is singular

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)
