from __future__ import annotations

import dataclasses
import enum

import numpy as np

from sparse_penalized.constants import EXHAUSTIVE_MAX_D
from sparse_penalized.exceptions import ContractError
from sparse_penalized.penalties import PenaltySpec


class InitKind(enum.StrEnum):
    MLE = 'mle'
    ZEROS = 'zeros'
    USER = 'user'


@dataclasses.dataclass(frozen=True)
class LqaConfig:
    """
    Settings of the LQA solver.

    clamp_tau=None means 1e-6 times the largest absolute initial coefficient.
    `beta0` is required for init=USER and also serves as a warm start.
    """

    tol: float = 1e-8
    max_iter: int = 200
    clamp_tau: float | None = None
    init: InitKind = InitKind.MLE
    beta0: tuple[float, ...] | None = None
    exhaustive_max_d: int = EXHAUSTIVE_MAX_D
    max_halvings: int = 30

    def __post_init__(self):
        object.__setattr__(self, 'init', InitKind(self.init))
        if not self.tol > 0:
            raise ContractError(f'tol must be > 0, got {self.tol!r}')
        if self.max_iter < 1:
            raise ContractError(f'max_iter must be >= 1, got {self.max_iter!r}')
        if self.clamp_tau is not None and not self.clamp_tau > 0:
            raise ContractError(f'clamp_tau must be > 0, got {self.clamp_tau!r}')
        if self.init == InitKind.USER and self.beta0 is None:
            raise ContractError('init=user needs beta0')
        if self.beta0 is not None:
            object.__setattr__(self, 'beta0', tuple(float(b) for b in self.beta0))

    def with_start(self, beta0) -> LqaConfig:
        return dataclasses.replace(self, init=InitKind.USER, beta0=tuple(float(b) for b in beta0))


@dataclasses.dataclass(frozen=True, eq=False)
class FitResult:
    beta: np.ndarray
    active_set: tuple[int, ...]
    objective: float  # n^-1 loglik - sum of penalties
    loglik: float  # un-averaged
    iterations: int
    converged: bool
    sigma_lambda: np.ndarray  # diagonal of Sigma_lambda: p'(|b|)/|b| on active penalized coordinates
    trace: tuple[float, ...]  # objective after every accepted iteration
    penalties: tuple[PenaltySpec, ...]
    n: int
    start: str = ''  # how the start value was obtained

    def __post_init__(self):
        for name in ('beta', 'sigma_lambda'):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def d(self) -> int:
        return int(self.beta.shape[0])

    def as_dict(self) -> dict:
        return {
            'beta': self.beta.tolist(),
            'active_set': list(self.active_set),
            'objective': self.objective,
            'loglik': self.loglik,
            'iterations': self.iterations,
            'converged': self.converged,
            'sigma_lambda': self.sigma_lambda.tolist(),
            'trace': list(self.trace),
            'penalty': {
                'kind': str(self.penalties[0].kind) if self.penalties else None,
                'lambdas': [spec.lam for spec in self.penalties],
            },
            'n': self.n,
            'start': self.start,
        }
