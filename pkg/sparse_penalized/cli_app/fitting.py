import dataclasses
import logging
from pathlib import Path

import numpy as np
from cli_base.cli_tools.verbosity import setup_logging
from cli_base.tyro_commands import TyroVerbosityArgType

from sparse_penalized.cli_app import app
from sparse_penalized.cli_app.arguments import FamilyChoice, LossChoice, PenaltyChoice
from sparse_penalized.cli_app.output import emit
from sparse_penalized.cli_app.settings import load_solver_settings
from sparse_penalized.constants import SCAD_DEFAULT_A
from sparse_penalized.exceptions import ContractError, SolverError
from sparse_penalized.harness import best_subset_oracle, fit_orthonormal
from sparse_penalized.harness.io import read_dataset, read_survival
from sparse_penalized.losses import QLossKind, evaluate_loss, exact_hinge_objective, make_q_loss, penalized_erm_fit
from sparse_penalized.models import CoxObjective, GlmFamily, GlmObjective, LikelihoodObjective
from sparse_penalized.penalties import PenaltyKind, PenaltySpec, per_coordinate_penalties
from sparse_penalized.solver import FitResult, fit as penalized_fit
from sparse_penalized.tuning import classical_criteria, gcv_select, sandwich_cov, standard_errors


logger = logging.getLogger(__name__)


def load_objective(data: Path, family: GlmFamily, survival: bool) -> LikelihoodObjective:
    if survival:
        return CoxObjective(read_survival(data))
    return GlmObjective(family, read_dataset(data))


def inference(result: FitResult, objective: LikelihoodObjective) -> dict | None:
    """Sandwich standard errors of the active coefficients, if the bracket can be inverted."""
    if not result.active_set:
        return None
    try:
        covariance = sandwich_cov(result, objective)
    except SolverError as err:
        logger.warning('No sandwich standard errors: %s', err)
        return None
    return {
        'active_set': list(result.active_set),
        'standard_errors': standard_errors(covariance).tolist(),
        'covariance': covariance.tolist(),
    }


@app.command
def fit(
    data: Path,
    verbosity: TyroVerbosityArgType,
    family: FamilyChoice = 'gaussian',
    survival: bool = False,
    penalty: PenaltyChoice = 'scad',
    lam: float | None = None,
    gcv: bool = False,
    unpenalized: tuple[int, ...] = (),
    a: float = SCAD_DEFAULT_A,
    q: float = 0.5,
    df_cost: float | None = None,
    seed: int = 0,
    out: Path | None = None,
    config: Path | None = None,
):
    """
    Fit a penalized GLM (columns "y" and covariates) or, with --survival, a penalized Cox model
    (columns "time", "status" and covariates). Without --lam the level is chosen by GCV,
    charging --df-cost (default log n) per effective parameter.
    """
    setup_logging(verbosity=verbosity)
    settings = load_solver_settings(config)
    objective = load_objective(data, GlmFamily(family), survival)
    penalty_kind = PenaltyKind(penalty)

    if gcv or lam is None:
        tuning = gcv_select(
            objective,
            penalty_kind,
            None,
            settings.lqa_config(),
            unpenalized=unpenalized,
            a=a,
            q=q,
            grid_size=settings.grid_size,
            workers=settings.workers,
            df_cost=df_cost,
        )
        result = tuning.fit_at_chosen
        report = {'tuning': tuning.as_dict()}
    else:
        penalties = per_coordinate_penalties(penalty_kind, [lam] * objective.d, unpenalized=unpenalized, a=a, q=q)
        result = penalized_fit(objective, penalties, settings.lqa_config())
        report = {}

    report.update(
        model=objective.name,
        fit=result.as_dict(),
        inference=inference(result, objective),
    )
    emit(report, seed=seed, out=out)


@app.command
def tune(
    data: Path,
    verbosity: TyroVerbosityArgType,
    family: FamilyChoice = 'gaussian',
    survival: bool = False,
    penalty: PenaltyChoice = 'scad',
    lambda_grid: tuple[float, ...] | None = None,
    unpenalized: tuple[int, ...] = (),
    classical: bool = False,
    a: float = SCAD_DEFAULT_A,
    q: float = 0.5,
    df_cost: float | None = None,
    seed: int = 0,
    out: Path | None = None,
    config: Path | None = None,
):
    """
    GCV over a lambda grid with per-point traces. --classical adds the subset criteria
    (adjusted R^2, GCV, penalized least squares) of all subsets for Gaussian data.
    """
    setup_logging(verbosity=verbosity)
    settings = load_solver_settings(config)
    objective = load_objective(data, GlmFamily(family), survival)
    penalty_kind = PenaltyKind(penalty)
    tuning = gcv_select(
        objective,
        penalty_kind,
        lambda_grid,
        settings.lqa_config(),
        unpenalized=unpenalized,
        a=a,
        q=q,
        grid_size=settings.grid_size,
        workers=settings.workers,
        df_cost=df_cost,
    )
    report = {'model': objective.name, 'tuning': tuning.as_dict()}
    if classical:
        if not (isinstance(objective, GlmObjective) and objective.family == GlmFamily.GAUSSIAN):
            raise ContractError('Classical subset criteria need Gaussian data')
        report['classical'] = [dataclasses.asdict(row) for row in classical_criteria(objective.data)]
    emit(report, seed=seed, out=out)


@app.command
def classify(
    data: Path,
    verbosity: TyroVerbosityArgType,
    lam: float,
    loss: LossChoice = 'hinge',
    penalty: PenaltyChoice = 'l1',
    unpenalized: tuple[int, ...] = (),
    seed: int = 0,
    out: Path | None = None,
    config: Path | None = None,
):
    """
    Penalized empirical risk minimization with a q-class loss. Labels in column "y" must be -1 or 1
    (any real response for the quadratic loss).
    """
    setup_logging(verbosity=verbosity)
    settings = load_solver_settings(config)
    dataset = read_dataset(data)
    loss_kind = QLossKind(loss)
    q_loss = make_q_loss(loss_kind)
    penalties = per_coordinate_penalties(PenaltyKind(penalty), [lam] * dataset.d, unpenalized=unpenalized)
    result = penalized_erm_fit(q_loss, dataset, penalties, settings.lqa_config())

    eta = dataset.X @ result.beta
    report = {
        'loss': loss,
        'fit': result.as_dict(),
        'empirical_risk': float(np.mean(evaluate_loss(q_loss, dataset.y, eta))),
    }
    if loss_kind != QLossKind.QUADRATIC:
        report['training_error'] = float(np.mean(np.where(eta >= 0, 1.0, -1.0) != dataset.y))
    if loss_kind == QLossKind.HINGE:
        report['exact_hinge_objective'] = exact_hinge_objective(result.beta, dataset, result.penalties)
    emit(report, seed=seed, out=out)


@app.command
def oracle_subset(
    data: Path,
    verbosity: TyroVerbosityArgType,
    lam: float,
    max_d: int | None = None,
    unpenalized: tuple[int, ...] = (),
    seed: int = 0,
    out: Path | None = None,
    config: Path | None = None,
):
    """
    Exhaustive best subset under RSS/(2n) + lam^2 |M| / 2 (Gaussian data, d <= max-d).
    max-d defaults to "exhaustive_max_d" of the solver settings.
    """
    setup_logging(verbosity=verbosity)
    if max_d is None:
        max_d = load_solver_settings(config).exhaustive_max_d
    result = best_subset_oracle(read_dataset(data), lam, max_d, unpenalized=unpenalized)
    emit(result.as_dict(), seed=seed, out=out)


@app.command
def threshold(
    z: tuple[float, ...],
    verbosity: TyroVerbosityArgType,
    penalty: PenaltyChoice = 'scad',
    lam: float = 1.0,
    a: float = SCAD_DEFAULT_A,
    q: float = 0.5,
    universal: bool = False,
    n: int | None = None,
    sigma: float = 1.0,
    seed: int = 0,
    out: Path | None = None,
):
    """
    Thresholding rule of a penalty applied componentwise to z (orthonormal design).
    --universal replaces lam by sigma * sqrt(2 log(n) / n).
    """
    setup_logging(verbosity=verbosity)
    spec = PenaltySpec(kind=PenaltyKind(penalty), lam=lam, a=a, q=q)
    beta = fit_orthonormal(np.array(z, dtype=float), spec, use_universal=universal, n=n, sigma=sigma)
    emit({'z': list(z), 'penalty': penalty, 'beta': beta.tolist()}, seed=seed, out=out)
