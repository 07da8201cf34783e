from __future__ import annotations

import dataclasses
import enum
import math

from sparse_penalized.constants import SCAD_DEFAULT_A
from sparse_penalized.exceptions import InvalidPenaltySpec


class PenaltyKind(enum.StrEnum):
    HARD = 'hard'
    ENTROPY = 'entropy'  # L0
    L1 = 'l1'
    L2 = 'l2'
    BRIDGE = 'bridge'  # Lq
    SCAD = 'scad'


class RidgeConvention(enum.StrEnum):
    """
    Scale of the L2 penalty: LAMBDA means p(|b|) = lam * b**2 (ridge rule z / (1 + 2 * lam)),
    HALF_LAMBDA means p(|b|) = lam * b**2 / 2 (ridge rule z / (1 + lam)).
    """

    LAMBDA = 'lambda'
    HALF_LAMBDA = 'half_lambda'


@dataclasses.dataclass(frozen=True)
class PenaltySpec:
    """
    One member of a penalty family with one regularization level.
    `a` is only used by SCAD, `q` only by Bridge and `ridge` only by L2.

    >>> PenaltySpec(kind=PenaltyKind.SCAD, lam=1)
    PenaltySpec(kind=<PenaltyKind.SCAD: 'scad'>, lam=1.0, a=3.7, q=0.5, ridge=<RidgeConvention.LAMBDA: 'lambda'>)
    """

    kind: PenaltyKind
    lam: float
    a: float = SCAD_DEFAULT_A
    q: float = 0.5
    ridge: RidgeConvention = RidgeConvention.LAMBDA

    def __post_init__(self):
        # Accept ints and numpy scalars, but store plain floats:
        for name in ('lam', 'a', 'q'):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, 'kind', PenaltyKind(self.kind))
        object.__setattr__(self, 'ridge', RidgeConvention(self.ridge))

        if not math.isfinite(self.lam) or self.lam < 0:
            raise InvalidPenaltySpec(f'lam must be a finite value >= 0, got {self.lam!r}')
        if self.kind == PenaltyKind.SCAD and not self.a > 2:
            raise InvalidPenaltySpec(f'SCAD shape parameter a must be > 2, got {self.a!r}')
        if self.kind == PenaltyKind.BRIDGE and not 0 < self.q < 2:
            raise InvalidPenaltySpec(f'Bridge exponent q must be in (0, 2), got {self.q!r}')

    def with_lambda(self, lam: float) -> PenaltySpec:
        return dataclasses.replace(self, lam=lam)

    @property
    def penalized(self) -> bool:
        return self.lam > 0


@dataclasses.dataclass(frozen=True)
class PenaltyProperties:
    sparsity: bool
    unbiasedness: bool
    continuity: bool

    def as_dict(self) -> dict[str, bool]:
        return dataclasses.asdict(self)
