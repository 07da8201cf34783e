"""
    Brute force grid minimization of the scalar PLS objective, used to verify `threshold()`.
"""

import numpy as np

from sparse_penalized.penalties.data_classes import PenaltySpec
from sparse_penalized.penalties.functions import penalty_values


def _grid_objective(spec: PenaltySpec, z: float, grid: np.ndarray) -> np.ndarray:
    return 0.5 * (z - grid) ** 2 + penalty_values(spec, np.abs(grid))


def grid_threshold(spec: PenaltySpec, z: float, *, step: float = 1e-5, coarse_step: float = 1e-3) -> float:
    """
    Minimize (z - b)**2 / 2 + p_lam(|b|) over a grid on [-(|z| + 1), |z| + 1]:
    a coarse pass with `coarse_step`, refined with `step` around the coarse minimum.
    Zero is always a candidate, so the keep-or-kill decision of discontinuous rules is exact.
    """
    z = float(z)
    bound = abs(z) + 1
    coarse = np.append(np.arange(-bound, bound + coarse_step, coarse_step), 0.0)
    center = float(coarse[np.argmin(_grid_objective(spec, z, coarse))])

    fine = np.append(np.arange(center - 2 * coarse_step, center + 2 * coarse_step + step, step), 0.0)
    values = _grid_objective(spec, z, fine)
    return float(fine[np.argmin(values)])
