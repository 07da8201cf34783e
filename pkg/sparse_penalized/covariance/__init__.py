from sparse_penalized.covariance.cholesky import (  # noqa: F401
    cholesky_select,
    covariance_from_cholesky,
    precision_from_cholesky,
    sample_covariance,
)
from sparse_penalized.covariance.compare import compare_estimators  # noqa: F401
from sparse_penalized.covariance.data_classes import CholeskyCov, ComparisonReport, FactorCov  # noqa: F401
from sparse_penalized.covariance.factor import factor_cov, portfolio_risk  # noqa: F401
