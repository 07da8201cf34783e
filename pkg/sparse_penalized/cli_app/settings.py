import dataclasses
import logging
from pathlib import Path

import tomlkit
from cli_base.cli_tools.verbosity import setup_logging
from cli_base.toml_settings.api import TomlSettings
from cli_base.tyro_commands import TyroVerbosityArgType

from sparse_penalized.cli_app import app
from sparse_penalized.constants import EXHAUSTIVE_MAX_D
from sparse_penalized.exceptions import ContractError
from sparse_penalized.solver import LqaConfig


logger = logging.getLogger(__name__)


SETTINGS_DIR_NAME = 'sparse-penalized'
SETTINGS_FILE_NAME = 'sparse-penalized'


@dataclasses.dataclass
class SolverSettings:
    """
    Solver defaults of all fitting commands.
    Can be overwritten per call with "--config PATH" (a TOML file with the same keys).
    """

    tol: float = 1e-8
    max_iter: int = 200
    max_halvings: int = 30
    exhaustive_max_d: int = EXHAUSTIVE_MAX_D

    # GCV grid and parallel grid points / replicates:
    grid_size: int = 50
    workers: int = 1

    def lqa_config(self) -> LqaConfig:
        return LqaConfig(
            tol=self.tol,
            max_iter=self.max_iter,
            max_halvings=self.max_halvings,
            exhaustive_max_d=self.exhaustive_max_d,
        )


def get_toml_settings() -> TomlSettings:
    return TomlSettings(
        dir_name=SETTINGS_DIR_NAME,
        file_name=SETTINGS_FILE_NAME,
        settings_dataclass=SolverSettings(),
    )


def get_user_settings(debug: bool = False) -> SolverSettings:
    """The user settings if the settings file exists, otherwise the defaults."""
    toml_settings: TomlSettings = get_toml_settings()
    if not toml_settings.file_path.is_file():
        logger.debug('No settings file %s: use defaults', toml_settings.file_path)
        return SolverSettings()
    user_settings: SolverSettings = toml_settings.get_user_settings(debug=debug)
    return user_settings


def read_config(path: Path, fields: set[str]) -> dict:
    """Values of a TOML config file. Every key must name one of `fields`."""
    document = tomlkit.parse(path.read_text(encoding='utf-8'))
    values = document.unwrap()
    if unknown := sorted(set(values) - fields):
        raise ContractError(f'{path}: unknown config keys {unknown}, expected some of {sorted(fields)}')
    logger.info('Read config %s: %r', path, values)
    return values


def load_solver_settings(config: Path | None) -> SolverSettings:
    if config is None:
        return SolverSettings()
    fields = {field.name for field in dataclasses.fields(SolverSettings)}
    return dataclasses.replace(SolverSettings(), **read_config(config, fields))


@app.command
def edit_settings(verbosity: TyroVerbosityArgType):
    """
    Edit the solver settings file. On first call: Create the default one.
    """
    setup_logging(verbosity=verbosity)
    toml_settings: TomlSettings = get_toml_settings()
    toml_settings.open_in_editor()


@app.command
def print_settings(verbosity: TyroVerbosityArgType):
    """
    Display the current solver settings
    """
    setup_logging(verbosity=verbosity)
    toml_settings: TomlSettings = get_toml_settings()
    toml_settings.print_settings()
