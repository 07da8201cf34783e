from __future__ import annotations

import logging
from collections.abc import Sequence

from sparse_penalized.models import LikelihoodObjective
from sparse_penalized.penalties import PenaltyKind, PenaltySpec
from sparse_penalized.solver.data_classes import FitResult, LqaConfig
from sparse_penalized.solver.lqa import check_penalties, lqa_fit
from sparse_penalized.solver.subsets import entropy_fit


logger = logging.getLogger(__name__)


def fit(objective: LikelihoodObjective, penalties: Sequence[PenaltySpec], config: LqaConfig | None = None) -> FitResult:
    """
    Maximize n^-1 loglik(beta) - sum_j p_j(|beta_j|) with one PenaltySpec per coefficient
    (lam_j = 0 leaves a coefficient unpenalized).
    """
    config = config or LqaConfig()
    penalties = check_penalties(objective, penalties)
    if any(spec.kind == PenaltyKind.ENTROPY and spec.penalized for spec in penalties):
        return entropy_fit(objective, penalties, config)
    return lqa_fit(objective, penalties, config)
