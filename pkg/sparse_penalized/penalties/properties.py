from __future__ import annotations

import logging

import numpy as np

from sparse_penalized.exceptions import InvalidPenaltySpec
from sparse_penalized.penalties.data_classes import PenaltyKind, PenaltyProperties, PenaltySpec
from sparse_penalized.penalties.functions import penalty_deriv, penalty_deriv_at_zero_plus


logger = logging.getLogger(__name__)

GRID_SIZE = 20_000


def property_grid(spec: PenaltySpec) -> np.ndarray:
    """
    Dense grid over (0, 10 * a * lam]: log spaced near zero plus a linear part.
    """
    span = 10 * spec.a * spec.lam
    log_part = np.geomspace(1e-9 * span, span, GRID_SIZE)
    linear_part = np.linspace(span / GRID_SIZE, span, GRID_SIZE)
    return np.unique(np.concatenate([log_part, linear_part]))


def check_properties(spec: PenaltySpec) -> PenaltyProperties:
    """
    Evaluate the three conditions on g(t) = t + p'(t) over t > 0, with g(0+) = p'(0+) taken
    from the one-sided limit instead of the smallest grid point:

    * sparsity: inf g > 0
    * unbiasedness: p'(t) vanishes (or decays towards zero) for large t
    * continuity: the infimum of g is attained at t = 0+

    >>> check_properties(PenaltySpec(kind=PenaltyKind.SCAD, lam=1))
    PenaltyProperties(sparsity=True, unbiasedness=True, continuity=True)
    >>> check_properties(PenaltySpec(kind=PenaltyKind.L1, lam=1))
    PenaltyProperties(sparsity=True, unbiasedness=False, continuity=True)
    >>> check_properties(PenaltySpec(kind=PenaltyKind.BRIDGE, lam=1, q=1.5))
    PenaltyProperties(sparsity=False, unbiasedness=False, continuity=True)
    """
    if not spec.lam > 0:
        raise InvalidPenaltySpec(f'check_properties() needs lam > 0, got {spec.lam!r}')

    if spec.kind == PenaltyKind.ENTROPY:
        # The jump at zero has no derivative: keep-or-kill is sparse, unbiased and discontinuous.
        return PenaltyProperties(sparsity=True, unbiasedness=True, continuity=False)

    grid = property_grid(spec)
    span = float(grid[-1])
    deriv = np.array([penalty_deriv(spec, float(t)) for t in grid])
    g = grid + deriv
    g_at_zero = penalty_deriv_at_zero_plus(spec)
    g_min = float(g.min())

    sparsity = bool(min(g_at_zero, g_min) > 0)

    tail, half_tail = deriv[-1], penalty_deriv(spec, span / 2)
    unbiasedness = bool(tail == 0 or tail < half_tail)

    continuity = bool(g_at_zero <= g_min + 1e-12 * span)

    result = PenaltyProperties(sparsity=sparsity, unbiasedness=unbiasedness, continuity=continuity)
    logger.debug('Properties of %s: %s', spec, result)
    return result
