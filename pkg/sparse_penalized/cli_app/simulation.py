import dataclasses
import logging
from pathlib import Path

from cli_base.cli_tools.verbosity import setup_logging
from cli_base.tyro_commands import TyroVerbosityArgType
from rich import print  # noqa

from sparse_penalized.cli_app import app
from sparse_penalized.cli_app.arguments import ExperimentChoice, GeneratorChoice, PenaltyChoice
from sparse_penalized.cli_app.output import emit
from sparse_penalized.cli_app.settings import get_user_settings, read_config
from sparse_penalized.exceptions import ContractError
from sparse_penalized.harness import (
    CovarianceSample,
    ExperimentConfig,
    ExperimentKind,
    GeneratorKind,
    generate,
    run_experiment as run_experiment_replicates,
)
from sparse_penalized.harness.generators import PARAM_CLASSES
from sparse_penalized.harness.io import write_dataset, write_matrix


logger = logging.getLogger(__name__)


def generator_params(kind: GeneratorKind, config: Path | None, **flags):
    """Parameters from the TOML config file, or else from the command line flags."""
    params_class = PARAM_CLASSES[kind]
    fields = {field.name for field in dataclasses.fields(params_class)}
    if config is not None:
        return params_class(**read_config(config, fields))
    if 'beta' in fields and flags['beta'] is None:
        raise ContractError(f'The {kind} generator needs --beta')
    return params_class(**{name: value for name, value in flags.items() if name in fields})


@app.command
def simulate(
    kind: GeneratorChoice,
    out: Path,
    verbosity: TyroVerbosityArgType,
    n: int = 100,
    d: int = 10,
    beta: tuple[float, ...] | None = None,
    sigma: float = 1.0,
    rho: float = 0.0,
    intercept: float | None = None,
    baseline_hazard: float = 1.0,
    censoring_rate: float = 0.0,
    k: int = 3,
    coefficients: tuple[float, ...] = (0.5,),
    seed: int = 0,
    config: Path | None = None,
):
    """
    Draw a synthetic data set into the directory --out: "data.csv" for the regression and
    survival kinds, "sample.csv" and the true "sigma.csv" (plus "factors.csv") otherwise.
    """
    setup_logging(verbosity=verbosity)
    generator_kind = GeneratorKind(kind)
    params = generator_params(
        generator_kind,
        config,
        n=n,
        d=d,
        beta=beta,
        sigma=sigma,
        rho=rho,
        intercept=intercept,
        baseline_hazard=baseline_hazard,
        censoring_rate=censoring_rate,
        k=k,
        coefficients=coefficients,
    )
    draw = generate(generator_kind, params, seed)

    if isinstance(draw, CovarianceSample):
        files = [write_matrix(draw.W, out / 'sample.csv'), write_matrix(draw.sigma, out / 'sigma.csv')]
        if draw.factors is not None:
            factor_columns = [f'f{j + 1}' for j in range(params.k)]
            files.append(write_matrix(draw.factors, out / 'factors.csv', columns=factor_columns))
    else:
        files = [write_dataset(draw, out / 'data.csv')]

    emit(
        {'kind': str(kind), 'params': dataclasses.asdict(params), 'files': [path.name for path in files]},
        seed=seed,
        out=out / 'simulation.json',
    )
    print(f'[green]Wrote {len(files)} files to {out}[/green]')


@app.command
def run_experiment(
    kind: ExperimentChoice,
    verbosity: TyroVerbosityArgType,
    seed: int = 0,
    replicates: int | None = None,
    n: int | None = None,
    d: int | None = None,
    penalty_kind: PenaltyChoice | None = None,
    grid_size: int | None = None,
    workers: int | None = None,
    out: Path | None = None,
    config: Path | None = None,
):
    """
    Run a Monte Carlo experiment and write "<kind>-replicates.json" and "<kind>-summary.json"
    to --out (default: current directory). Same seed: same files.
    """
    setup_logging(verbosity=verbosity)
    if config is None:
        user_settings = get_user_settings()
        values = {'grid_size': user_settings.grid_size, 'workers': user_settings.workers}
    else:
        fields = {field.name for field in dataclasses.fields(ExperimentConfig)} - {'kind', 'seed', 'out'}
        values = read_config(config, fields)

    flags = dict(replicates=replicates, n=n, d=d, penalty_kind=penalty_kind, grid_size=grid_size, workers=workers)
    values.update({name: value for name, value in flags.items() if value is not None})

    report = run_experiment_replicates(ExperimentConfig(kind=ExperimentKind(kind), seed=seed, out=out, **values))
    print(f'Replicates: {report.replicates_path}')
    print(f'Summary: {report.summary_path}')
    print(report.summary.get('checks'))
