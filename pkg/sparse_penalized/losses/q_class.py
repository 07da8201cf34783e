"""
    Losses generated by a concave function q:

        loss(y, m) = q(m) - q(y) - q'(m) (m - y)

    Concavity of q makes the loss nonnegative. At a kink of q the derivative is the
    average of the one-sided derivatives.
"""

from __future__ import annotations

import dataclasses
import enum
import logging

import numpy as np

from sparse_penalized.exceptions import DomainError


logger = logging.getLogger(__name__)


class QLossKind(enum.StrEnum):
    MISCLASSIFICATION = 'misclassification'
    HINGE = 'hinge'
    EXPONENTIAL = 'exponential'
    QUADRATIC = 'quadratic'


# Slope of min{1 - m, 1 + m} scaled by this factor:
KINK_SCALES = {QLossKind.MISCLASSIFICATION: 0.5, QLossKind.HINGE: 0.25}


@dataclasses.dataclass(frozen=True)
class QLoss:
    """
    >>> QLoss(QLossKind.QUADRATIC, c=2.0)(np.array([1.0]), np.array([0.25]))
    array([0.5625])
    """

    kind: QLossKind
    c: float = 0.0  # linear coefficient of the quadratic q(m) = c*m - m^2

    def __post_init__(self):
        object.__setattr__(self, 'kind', QLossKind(self.kind))
        object.__setattr__(self, 'c', float(self.c))

    def check_domain(self, m: np.ndarray) -> None:
        if self.kind == QLossKind.EXPONENTIAL and np.any(np.abs(m) >= 1):
            raise DomainError('The exponential q-loss needs predictions with |m| < 1')

    def q(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        match self.kind:
            case QLossKind.MISCLASSIFICATION | QLossKind.HINGE:
                return KINK_SCALES[self.kind] * np.minimum(1 - m, 1 + m)
            case QLossKind.EXPONENTIAL:
                if np.any(np.abs(m) > 1):
                    raise DomainError('q(m) = sqrt(1 - m^2) needs |m| <= 1')
                return np.sqrt(1 - m**2)
            case QLossKind.QUADRATIC:
                return self.c * m - m**2
        raise NotImplementedError(self.kind)

    def q_deriv(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        match self.kind:
            case QLossKind.MISCLASSIFICATION | QLossKind.HINGE:
                # -scale for m > 0, +scale for m < 0 and the average 0 at the kink
                return -KINK_SCALES[self.kind] * np.sign(m)
            case QLossKind.EXPONENTIAL:
                self.check_domain(m)
                return -m / np.sqrt(1 - m**2)
            case QLossKind.QUADRATIC:
                return self.c - 2 * m
        raise NotImplementedError(self.kind)

    def __call__(self, y, m) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        m = np.asarray(m, dtype=float)
        self.check_domain(m)
        return self.q(m) - self.q(y) - self.q_deriv(m) * (m - y)


def make_q_loss(kind: QLossKind, c: float = 0.0) -> QLoss:
    """
    >>> float(make_q_loss(QLossKind.MISCLASSIFICATION)(1.0, -0.3)[()])
    1.0
    """
    return QLoss(kind=kind, c=c)


def prediction_link(loss: QLoss, eta: np.ndarray) -> np.ndarray:
    """Map a linear predictor into the domain of the loss: tanh for the exponential kind."""
    if loss.kind == QLossKind.EXPONENTIAL:
        return np.tanh(eta)
    return eta
