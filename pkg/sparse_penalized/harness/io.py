"""
    CSV input and JSON output.

    CSV files have a header row and one observation per row: the columns `y` (regression), or
    `time` and `status` (survival), plus optional `weight`; all other columns form the design.
    JSON is encoded by msgspec with sorted keys, so equal content gives equal bytes.
"""

from __future__ import annotations

import logging
from pathlib import Path

import msgspec
import numpy as np
import pandas as pd

from sparse_penalized.exceptions import ContractError
from sparse_penalized.models import Dataset, SurvivalData


logger = logging.getLogger(__name__)

RESPONSE_COLUMN = 'y'
WEIGHT_COLUMN = 'weight'
SURVIVAL_COLUMNS = ('time', 'status')


def read_frame(path: Path) -> pd.DataFrame:
    frame = pd.read_csv(path, float_precision='round_trip')
    if frame.empty:
        raise ContractError(f'{path}: no observations')
    return frame


def design_columns(frame: pd.DataFrame, *, reserved: tuple[str, ...]) -> list[str]:
    columns = [column for column in frame.columns if column not in reserved]
    if not columns:
        raise ContractError(f'No design columns besides {reserved}')
    return columns


def read_dataset(path: Path) -> Dataset:
    frame = read_frame(path)
    if RESPONSE_COLUMN not in frame.columns:
        raise ContractError(f'{path}: missing response column {RESPONSE_COLUMN!r}')
    columns = design_columns(frame, reserved=(RESPONSE_COLUMN, WEIGHT_COLUMN))
    weights = frame[WEIGHT_COLUMN].to_numpy(dtype=float) if WEIGHT_COLUMN in frame.columns else None
    logger.info('Read %i observations with %i covariates from %s', len(frame), len(columns), path)
    X = frame[columns].to_numpy(dtype=float)
    return Dataset(X=X, y=frame[RESPONSE_COLUMN].to_numpy(dtype=float), weights=weights)


def read_survival(path: Path) -> SurvivalData:
    frame = read_frame(path)
    if missing := [column for column in SURVIVAL_COLUMNS if column not in frame.columns]:
        raise ContractError(f'{path}: missing survival columns {missing}')
    columns = design_columns(frame, reserved=SURVIVAL_COLUMNS)
    logger.info('Read %i survival records with %i covariates from %s', len(frame), len(columns), path)
    return SurvivalData(
        X=frame[columns].to_numpy(dtype=float),
        time=frame['time'].to_numpy(dtype=float),
        status=frame['status'].to_numpy(dtype=float),
    )


def read_matrix(path: Path) -> tuple[np.ndarray, list[str]]:
    frame = read_frame(path)
    return frame.to_numpy(dtype=float), [str(column) for column in frame.columns]


def covariate_names(d: int) -> list[str]:
    """
    >>> covariate_names(3)
    ['x1', 'x2', 'x3']
    """
    return [f'x{j}' for j in range(1, d + 1)]


def dataset_frame(data: Dataset | SurvivalData) -> pd.DataFrame:
    frame = pd.DataFrame(data.X, columns=covariate_names(data.d))
    if isinstance(data, SurvivalData):
        frame['time'] = data.time
        frame['status'] = data.status
    else:
        frame[RESPONSE_COLUMN] = data.y
        if data.weights is not None:
            frame[WEIGHT_COLUMN] = data.weights
    return frame


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info('Wrote %i rows to %s', len(frame), path)
    return path


def write_dataset(data: Dataset | SurvivalData, path: Path) -> Path:
    return write_csv(dataset_frame(data), path)


def write_matrix(matrix: np.ndarray, path: Path, columns: list[str] | None = None) -> Path:
    return write_csv(pd.DataFrame(matrix, columns=columns or covariate_names(matrix.shape[1])), path)


def to_builtin(value):
    """numpy scalars and arrays as plain Python objects; non-finite floats as strings."""
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [to_builtin(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, np.generic):
        return to_builtin(value.item())
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    if isinstance(value, Path):
        return str(value)
    return value


def encode_json(payload: dict) -> bytes:
    """
    >>> encode_json({'b': np.float64(0.5), 'a': [np.int64(1), float('inf')]})
    b'{"a":[1,"inf"],"b":0.5}'
    """
    return msgspec.json.encode(to_builtin(payload), order='sorted')


def write_json(payload: dict, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_json(payload) + b'\n')
    logger.info('Wrote %s', path)
    return path
