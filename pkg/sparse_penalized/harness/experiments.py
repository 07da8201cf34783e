"""
    Desk-scale Monte Carlo experiments.

    Every experiment runs independent replicates, each on its own PCG64 stream spawned from
    the master seed, and writes `<kind>-replicates.json` and `<kind>-summary.json`.
    The files depend on the seed only: not on the number of workers or on completion order.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import psutil
from frozendict import frozendict

from sparse_penalized.constants import RNG_NAME
from sparse_penalized.covariance import cholesky_select, compare_estimators, factor_cov, sample_covariance
from sparse_penalized.harness.best_subset import best_subset_oracle
from sparse_penalized.harness.data_classes import (
    ArParams,
    ExperimentConfig,
    ExperimentKind,
    FactorParams,
    RegressionParams,
    SurvivalParams,
)
from sparse_penalized.harness.generators import (
    draw_ar,
    draw_factor,
    draw_regression,
    draw_survival,
    regression_generator,
    spawn_rngs,
)
from sparse_penalized.harness.io import write_json
from sparse_penalized.harness.orthonormal import fit_orthonormal, least_squares_coefficients, orthonormal_design
from sparse_penalized.losses import QLossKind, empirical_risk_gap, make_q_loss, penalized_erm_fit
from sparse_penalized.models import CoxObjective, GlmFamily, GlmObjective, partial_loglik, partial_loglik_gradient
from sparse_penalized.penalties import (
    PenaltyKind,
    PenaltySpec,
    grid_threshold,
    scalar_objective,
    ric_lambda,
    threshold,
    universal_lambda,
)
from sparse_penalized.solver import fit
from sparse_penalized.tuning import gcv_select, sandwich_cov
from sparse_penalized.utilities.error_handling import LogErrors


logger = logging.getLogger(__name__)

ORACLE_BETA = (3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0)
ORACLE_RHO = 0.5
COX_BETA = (1.0, 0.0, 0.0, -1.0, 0.0, 0.0)
COX_CENSORING_RATE = 0.3
PERSISTENCE_NONZERO = (2.0, -1.5, 1.0, 1.0, -0.5)
RISK_MC_N = 2000
THRESHOLD_KINDS = (
    PenaltySpec(kind=PenaltyKind.HARD, lam=1.0),
    PenaltySpec(kind=PenaltyKind.ENTROPY, lam=1.0),
    PenaltySpec(kind=PenaltyKind.L1, lam=1.0),
    PenaltySpec(kind=PenaltyKind.L2, lam=1.0),
    PenaltySpec(kind=PenaltyKind.SCAD, lam=1.0),
    PenaltySpec(kind=PenaltyKind.BRIDGE, lam=1.0, q=0.5),
)
THRESHOLD_TOLERANCE = 1e-4
# Different minimizers count as matched only at a tie of the two objective values:
TIE_SLACK = 1e-9


@dataclasses.dataclass(frozen=True)
class Experiment:
    replicate: Callable[[ExperimentConfig, np.random.Generator], dict]
    summarize: Callable[[ExperimentConfig, list[dict]], dict]
    replicates: int
    n: int
    d: int
    penalty_kind: PenaltyKind


@dataclasses.dataclass(frozen=True)
class ExperimentReport:
    replicates_path: Path
    summary_path: Path
    summary: dict


def settings(config: ExperimentConfig) -> tuple[int, int, PenaltyKind]:
    experiment = EXPERIMENTS[config.kind]
    return (config.n or experiment.n, config.d or experiment.d, config.penalty_kind or experiment.penalty_kind)


def rate(flags) -> float:
    flags = list(flags)
    return float(np.mean(flags)) if flags else math.nan


def median(values) -> float:
    values = list(values)
    return float(np.median(values)) if values else math.nan


def tuned_fit(objective, penalty_kind: PenaltyKind, config: ExperimentConfig):
    return gcv_select(objective, penalty_kind, grid_size=config.grid_size)


# threshold-oracle ##########################################################################


def threshold_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    lam = 3.0 - float(rng.uniform(0, 3))  # (0, 3]
    z = float(rng.uniform(-10, 10))
    row = {'lam': lam, 'z': z}
    for base in THRESHOLD_KINDS:
        spec = base.with_lambda(lam)
        exact, grid = threshold(spec, z), grid_threshold(spec, z)
        row[str(spec.kind)] = {
            'threshold': exact,
            'grid': grid,
            'objective_excess': scalar_objective(spec, z, exact) - scalar_objective(spec, z, grid),
        }
    return row


def threshold_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    summary = {}
    for base in THRESHOLD_KINDS:
        kind = str(base.kind)
        differences = [abs(row[kind]['threshold'] - row[kind]['grid']) for row in rows]
        excess = [row[kind]['objective_excess'] for row in rows]
        matched = [
            difference <= THRESHOLD_TOLERANCE or abs(value) <= TIE_SLACK
            for difference, value in zip(differences, excess, strict=True)
        ]
        summary[kind] = {
            'max_abs_difference': max(differences, default=math.nan),
            'max_objective_excess': max(excess, default=math.nan),
            'matched_rate': rate(matched),
        }
    summary['checks'] = {'all_matched': all(summary[str(base.kind)]['matched_rate'] == 1.0 for base in THRESHOLD_KINDS)}
    return summary


# oracle ####################################################################################


def oracle_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    n, d, penalty_kind = settings(config)
    beta_true = (ORACLE_BETA + (0.0,) * d)[:d]
    data = draw_regression(GlmFamily.GAUSSIAN, RegressionParams(n=n, beta=beta_true, rho=ORACLE_RHO), rng)
    objective = GlmObjective(GlmFamily.GAUSSIAN, data)
    tuning = tuned_fit(objective, penalty_kind, config)
    result = tuning.fit_at_chosen

    true_support = tuple(j for j, b in enumerate(beta_true) if b != 0)
    oracle = np.linalg.lstsq(data.X[:, list(true_support)], data.y, rcond=None)[0]
    distance = float(np.linalg.norm(result.beta[list(true_support)] - oracle))

    sandwich_se = {}
    if result.active_set:
        covariance = sandwich_cov(result, objective)
        sandwich_se = {str(j): float(np.sqrt(max(covariance[k, k], 0.0))) for k, j in enumerate(result.active_set)}
    return {
        'support': list(result.active_set),
        'exact_support': result.active_set == true_support,
        'oracle_distance': distance,
        'chosen_lambda': tuning.chosen_lambda,
        'beta': result.beta.tolist(),
        'sandwich_se': sandwich_se,
    }


def sandwich_tracking(config: ExperimentConfig, rows: list[dict]) -> dict:
    """
    Per true nonzero coefficient: Monte Carlo sd of the estimate over all replicates
    against the mean sandwich standard error over the replicates that keep it active.
    """
    _, d, _ = settings(config)
    beta_true = (ORACLE_BETA + (0.0,) * d)[:d]
    tracking = {}
    for j, b in enumerate(beta_true):
        standard_errors = [row['sandwich_se'][str(j)] for row in rows if str(j) in row['sandwich_se']]
        if b == 0 or len(rows) < 2 or not standard_errors:
            continue
        mc_sd = float(np.std([row['beta'][j] for row in rows], ddof=1))
        mean_se = float(np.mean(standard_errors))
        tracking[str(j)] = {
            'mc_sd': mc_sd,
            'mean_sandwich_se': mean_se,
            'ratio': mean_se / mc_sd if mc_sd else math.nan,
            'active_replicates': len(standard_errors),
        }
    return tracking


def oracle_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    recovery = rate(row['exact_support'] for row in rows)
    distance = median(row['oracle_distance'] for row in rows)
    return {
        'support_recovery_rate': recovery,
        'median_oracle_distance': distance,
        'sandwich_tracking': sandwich_tracking(config, rows),
        'checks': {'support_recovery': recovery >= 0.9, 'oracle_distance': distance <= 0.05},
    }


def sandwich_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    tracking = sandwich_tracking(config, rows)
    within = bool(tracking) and all(abs(t['ratio'] - 1) <= 0.25 for t in tracking.values())
    return {
        'support_recovery_rate': rate(row['exact_support'] for row in rows),
        'sandwich_tracking': tracking,
        'checks': {'sandwich_within_25_percent': within},
    }


# best-subset ###############################################################################


def best_subset_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    n, max_d, _ = settings(config)
    d = int(rng.integers(2, max_d + 1))
    beta = np.where(rng.random(d) < 0.5, rng.normal(scale=2.0, size=d), 0.0)
    data = draw_regression(GlmFamily.GAUSSIAN, RegressionParams(n=n, beta=tuple(beta)), rng)
    lam = float(rng.uniform(0.05, 0.6))

    entropy = fit(GlmObjective(GlmFamily.GAUSSIAN, data), [PenaltySpec(kind=PenaltyKind.ENTROPY, lam=lam)] * d)
    oracle = best_subset_oracle(data, lam)
    return {
        'd': d,
        'lam': lam,
        'entropy_subset': list(entropy.active_set),
        'oracle_subset': list(oracle.subset),
        'match': entropy.active_set == oracle.subset,
    }


def best_subset_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    match_rate = rate(row['match'] for row in rows)
    return {'match_rate': match_rate, 'checks': {'identical_subsets': match_rate == 1.0}}


# cox #######################################################################################


def cox_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    n, d, penalty_kind = settings(config)
    beta_true = np.array((COX_BETA + (0.0,) * d)[:d])
    data = draw_survival(SurvivalParams(n=n, beta=tuple(beta_true), censoring_rate=COX_CENSORING_RATE), rng)
    objective = CoxObjective(data)
    tuning = tuned_fit(objective, penalty_kind, config)

    h = 1e-5
    numeric = np.array(
        [
            (partial_loglik(beta_true + h * e, data) - partial_loglik(beta_true - h * e, data)) / (2 * h)
            for e in np.eye(d)
        ]
    )
    analytic = partial_loglik_gradient(beta_true, data)
    gradient_error = float(np.max(np.abs(numeric - analytic)) / max(1.0, float(np.max(np.abs(analytic)))))

    true_support = tuple(int(j) for j in np.flatnonzero(beta_true))
    active = tuning.fit_at_chosen.active_set
    return {
        'support': list(active),
        'exact_support': active == true_support,
        'censored_fraction': float(1 - data.status.mean()),
        'chosen_lambda': tuning.chosen_lambda,
        'gradient_error': gradient_error,
    }


def cox_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    recovery = rate(row['exact_support'] for row in rows)
    gradient_error = max((row['gradient_error'] for row in rows), default=math.nan)
    return {
        'support_recovery_rate': recovery,
        'max_gradient_error': gradient_error,
        'mean_censored_fraction': float(np.mean([row['censored_fraction'] for row in rows])) if rows else math.nan,
        'checks': {'support_recovery': recovery >= 0.85, 'gradient': gradient_error <= 1e-6},
    }


# persistence ###############################################################################


def persistence_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    n, d, penalty_kind = settings(config)
    beta_star = np.zeros(d)
    nonzero = PERSISTENCE_NONZERO[:d]
    beta_star[: len(nonzero)] = nonzero
    params = RegressionParams(n=n, beta=tuple(beta_star))
    generator = regression_generator(params)
    loss = make_q_loss(QLossKind.QUADRATIC)

    row = {}
    for label, size in (('small', n), ('large', 4 * n)):
        data = generator(size, rng)
        lam = ric_lambda(1.0, size, d)
        result = penalized_erm_fit(loss, data, [PenaltySpec(kind=penalty_kind, lam=lam)] * d)
        gap = empirical_risk_gap(result.beta, beta_star, loss, generator, RISK_MC_N, seed=int(rng.integers(2**32)))
        row[label] = {'n': size, 'lam': lam, 'gap': gap.gap, 'standard_error': gap.standard_error}
    row['shrinks'] = row['large']['gap'] < row['small']['gap']
    return row


def persistence_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    shrink_rate = rate(row['shrinks'] for row in rows)
    return {
        'shrink_rate': shrink_rate,
        'mean_gap_small': float(np.mean([row['small']['gap'] for row in rows])) if rows else math.nan,
        'mean_gap_large': float(np.mean([row['large']['gap'] for row in rows])) if rows else math.nan,
        'checks': {'persistence_trend': shrink_rate >= 0.95},
    }


# universal-threshold #######################################################################


def universal_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    n, d, penalty_kind = settings(config)
    X = orthonormal_design(n, d, rng)
    z = least_squares_coefficients(X, rng.standard_normal(n))
    beta = fit_orthonormal(z, PenaltySpec(kind=penalty_kind, lam=0.0), use_universal=True, n=n, sigma=1.0)
    return {'all_zero': bool(np.all(beta == 0)), 'nonzero': int(np.count_nonzero(beta))}


def universal_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    n, _, _ = settings(config)
    zero_rate = rate(row['all_zero'] for row in rows)
    return {
        'lambda': universal_lambda(1.0, n),
        'all_zero_rate': zero_rate,
        'checks': {'all_zero_rate': zero_rate >= 0.8},
    }


# cholesky ##################################################################################


def cholesky_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    n, d, penalty_kind = settings(config)
    sample = draw_ar(ArParams(n=n, d=d), rng)

    unpenalized = cholesky_select(sample.W, penalty_kind, lam=0.0)
    reconstruction_error = float(np.max(np.abs(unpenalized.sigma - sample_covariance(sample.W))))

    estimate = cholesky_select(sample.W, penalty_kind)
    support = estimate.support()
    band = sample.phi != 0
    off_band = np.tril(~band, k=-1)
    return {
        'reconstruction_error': reconstruction_error,
        'false_positive_rate': float(support[off_band].mean()) if off_band.any() else 0.0,
        'band_recovery_rate': float(support[band].mean()),
        'row_lambdas': list(estimate.row_lambdas),
    }


def cholesky_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    reconstruction = max((row['reconstruction_error'] for row in rows), default=math.nan)
    false_positive = float(np.mean([row['false_positive_rate'] for row in rows])) if rows else math.nan
    return {
        'max_reconstruction_error': reconstruction,
        'mean_false_positive_rate': false_positive,
        'mean_band_recovery_rate': float(np.mean([row['band_recovery_rate'] for row in rows])) if rows else math.nan,
        'checks': {'reconstruction': reconstruction <= 1e-8, 'false_positive_rate': false_positive <= 0.1},
    }


# factor ####################################################################################


def factor_replicate(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    n, d, _ = settings(config)
    sample = draw_factor(FactorParams(n=n, d=d), rng)
    estimate = factor_cov(sample.W, sample.factors)
    factor_report, sample_report = compare_estimators(
        sample.sigma,
        [estimate.sigma, sample_covariance(sample.W)],
        np.full(d, 1 / d),
    )
    return {'factor': factor_report.as_dict(), 'sample': sample_report.as_dict()}


def factor_summary(config: ExperimentConfig, rows: list[dict]) -> dict:
    wins = rate(row['factor']['precision_error'] < row['sample']['precision_error'] for row in rows)
    ratios = [row['factor']['max_eigen_deviation'] / row['sample']['max_eigen_deviation'] for row in rows]
    within = rate(0.5 <= ratio <= 2.0 for ratio in ratios)
    return {
        'precision_win_rate': wins,
        'median_eigen_deviation_ratio': median(ratios),
        'eigen_deviation_within_2x_rate': within,
        'checks': {'precision_win_rate': wins >= 0.9, 'eigen_deviation_comparable': 0.5 <= median(ratios) <= 2.0},
    }


EXPERIMENTS = frozendict(
    {
        ExperimentKind.THRESHOLD_ORACLE: Experiment(
            threshold_replicate, threshold_summary, replicates=10_000, n=1, d=1, penalty_kind=PenaltyKind.L1
        ),
        ExperimentKind.ORACLE: Experiment(
            oracle_replicate, oracle_summary, replicates=200, n=400, d=8, penalty_kind=PenaltyKind.SCAD
        ),
        ExperimentKind.SANDWICH: Experiment(
            oracle_replicate, sandwich_summary, replicates=500, n=800, d=8, penalty_kind=PenaltyKind.SCAD
        ),
        ExperimentKind.BEST_SUBSET: Experiment(
            best_subset_replicate, best_subset_summary, replicates=50, n=60, d=10, penalty_kind=PenaltyKind.ENTROPY
        ),
        ExperimentKind.COX: Experiment(
            cox_replicate, cox_summary, replicates=200, n=300, d=6, penalty_kind=PenaltyKind.SCAD
        ),
        ExperimentKind.PERSISTENCE: Experiment(
            persistence_replicate, persistence_summary, replicates=100, n=250, d=50, penalty_kind=PenaltyKind.L1
        ),
        ExperimentKind.UNIVERSAL_THRESHOLD: Experiment(
            universal_replicate, universal_summary, replicates=100, n=1024, d=64, penalty_kind=PenaltyKind.L1
        ),
        ExperimentKind.CHOLESKY: Experiment(
            cholesky_replicate, cholesky_summary, replicates=100, n=1000, d=10, penalty_kind=PenaltyKind.SCAD
        ),
        ExperimentKind.FACTOR: Experiment(
            factor_replicate, factor_summary, replicates=100, n=100, d=50, penalty_kind=PenaltyKind.L1
        ),
    }
)


def default_workers() -> int:
    return psutil.cpu_count(logical=False) or 1


def run_replicates(config: ExperimentConfig) -> tuple[list[dict], int]:
    """Rows in replicate order and the number of failed replicates."""
    experiment = EXPERIMENTS[config.kind]
    count = config.replicates or experiment.replicates
    workers = config.workers or default_workers()

    def run(item: tuple[int, np.random.Generator]) -> dict:
        number, rng = item
        with LogErrors(logger, message=f'{config.kind} replicate {number} failed: %s') as errors:
            return {'replicate': number, **experiment.replicate(config, rng)}
        return {'replicate': number, 'failed': True, 'error': f'{type(errors.exception).__name__}: {errors.exception}'}

    items = list(enumerate(spawn_rngs(config.seed, count)))
    logger.info('Run %i %s replicates (seed %i, %i workers)', count, config.kind, config.seed, workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(run, items))
    else:
        rows = [run(item) for item in items]
    failed = sum(1 for row in rows if row.get('failed'))
    if failed:
        logger.warning('%i of %i %s replicates failed', failed, count, config.kind)
    return rows, failed


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    experiment = EXPERIMENTS[config.kind]
    rows, failed = run_replicates(config)
    n, d, penalty_kind = settings(config)
    header = {
        'kind': str(config.kind),
        'seed': config.seed,
        'rng': RNG_NAME,
        'n': n,
        'd': d,
        'penalty_kind': str(penalty_kind),
        'replicates': len(rows),
        'failed': failed,
    }
    summary = {**header, **experiment.summarize(config, [row for row in rows if not row.get('failed')])}

    out = config.out or Path.cwd()
    replicates_path = write_json({**header, 'rows': rows}, out / f'{config.kind}-replicates.json')
    summary_path = write_json(summary, out / f'{config.kind}-summary.json')
    logger.info('%s summary: %s', config.kind, summary.get('checks'))
    return ExperimentReport(replicates_path=replicates_path, summary_path=summary_path, summary=summary)
