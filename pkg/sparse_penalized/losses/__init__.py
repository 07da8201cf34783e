from sparse_penalized.losses.erm import (  # noqa: F401
    ErmLoss,
    ExponentialLoss,
    LossObjective,
    QuadraticLoss,
    SmoothedHinge,
    as_erm_loss,
    erm_lambda_max,
    exact_hinge_objective,
    penalized_erm_fit,
)
from sparse_penalized.losses.q_class import QLoss, QLossKind, make_q_loss, prediction_link  # noqa: F401
from sparse_penalized.losses.risk import RiskGap, empirical_risk_gap, evaluate_loss  # noqa: F401
