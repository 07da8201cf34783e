import logging
from pathlib import Path
from typing import Literal

import numpy as np
import tyro
from cli_base.cli_tools.verbosity import setup_logging
from cli_base.tyro_commands import TyroVerbosityArgType

from sparse_penalized.cli_app import app
from sparse_penalized.cli_app.arguments import PenaltyChoice
from sparse_penalized.cli_app.output import emit
from sparse_penalized.cli_app.settings import load_solver_settings
from sparse_penalized.covariance import (
    cholesky_select,
    compare_estimators,
    factor_cov,
    portfolio_risk,
    sample_covariance,
)
from sparse_penalized.exceptions import ContractError
from sparse_penalized.harness.io import read_matrix
from sparse_penalized.penalties import PenaltyKind


logger = logging.getLogger(__name__)


@app.command
def cov(
    method: tyro.conf.Positional[Literal['chol', 'factor']],
    data: Path,
    verbosity: TyroVerbosityArgType,
    factors: Path | None = None,
    penalty: PenaltyChoice = 'scad',
    lam: float | None = None,
    order: tuple[int, ...] | None = None,
    truth: Path | None = None,
    seed: int = 0,
    out: Path | None = None,
    config: Path | None = None,
):
    """
    Covariance estimate of the sample matrix in --data (one column per variable):
    "chol" = sparse modified Cholesky (GCV per row without --lam),
    "factor" = factor model on the observed factors in --factors.
    With --truth the estimate and the sample covariance are compared against the true matrix.
    """
    setup_logging(verbosity=verbosity)
    settings = load_solver_settings(config)
    W, columns = read_matrix(data)

    if method == 'chol':
        estimate = cholesky_select(
            W,
            PenaltyKind(penalty),
            lam,
            order=order,
            config=settings.lqa_config(),
            workers=settings.workers,
        )
    else:
        if factors is None:
            raise ContractError('The factor model needs --factors')
        F, _ = read_matrix(factors)
        estimate = factor_cov(W, F)

    equal_weights = np.full(W.shape[1], 1 / W.shape[1])
    report = {
        'method': method,
        'columns': columns,
        'estimate': estimate.as_dict(),
        'equal_weight_risk': portfolio_risk(estimate.sigma, equal_weights),
    }
    if truth is not None:
        sigma_true, _ = read_matrix(truth)
        estimate_report, sample_report = compare_estimators(
            sigma_true,
            [estimate.sigma, sample_covariance(W)],
            equal_weights,
        )
        report['comparison'] = {'estimate': estimate_report.as_dict(), 'sample': sample_report.as_dict()}
    emit(report, seed=seed, out=out)
