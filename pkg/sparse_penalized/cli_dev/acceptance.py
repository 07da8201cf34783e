import logging
import time
from pathlib import Path

from cli_base.cli_tools.verbosity import setup_logging
from cli_base.tyro_commands import TyroVerbosityArgType
from rich import print  # noqa
from rich.table import Table

from sparse_penalized.cli_dev import app
from sparse_penalized.harness import ExperimentConfig, ExperimentKind, run_experiment


logger = logging.getLogger(__name__)


@app.command
def acceptance(
    verbosity: TyroVerbosityArgType,
    out: Path = Path('.acceptance'),
    seed: int = 0,
    workers: int | None = None,
):
    """
    Run all Monte Carlo experiments with their full replicate counts and list the checks.
    """
    setup_logging(verbosity=verbosity)

    table = Table(title=f'Acceptance experiments (seed {seed})')
    table.add_column('Experiment')
    table.add_column('Check')
    table.add_column('Result')
    table.add_column('Seconds', justify='right')

    for kind in ExperimentKind:
        start = time.monotonic()
        report = run_experiment(ExperimentConfig(kind=kind, seed=seed, workers=workers, out=out / kind))
        duration = f'{time.monotonic() - start:.1f}'
        for name, passed in report.summary['checks'].items():
            table.add_row(str(kind), name, '[green]pass[/green]' if passed else '[red]fail[/red]', duration)
    print(table)
