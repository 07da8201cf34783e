"""
    Argument types of the CLI commands.
"""

import enum
from typing import Literal

from sparse_penalized.harness import ExperimentKind, GeneratorKind
from sparse_penalized.losses import QLossKind
from sparse_penalized.models import GlmFamily
from sparse_penalized.penalties import PenaltyKind


def values_literal(enum_class: type[enum.StrEnum]):
    """
    Literal of the enum values, so the command line takes e.g. "scad" instead of "SCAD".

    >>> values_literal(GlmFamily)
    typing.Literal['gaussian', 'logistic', 'poisson']
    """
    return Literal[tuple(member.value for member in enum_class)]


FamilyChoice = values_literal(GlmFamily)
PenaltyChoice = values_literal(PenaltyKind)
LossChoice = values_literal(QLossKind)
GeneratorChoice = values_literal(GeneratorKind)
ExperimentChoice = values_literal(ExperimentKind)
