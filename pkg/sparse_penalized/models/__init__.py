from sparse_penalized.models.cox import (  # noqa: F401
    RiskSetIndex,
    SurvivalData,
    build_risk_sets,
    cox_observation_scores,
    partial_loglik,
    partial_loglik_derivatives,
    partial_loglik_gradient,
    partial_loglik_hessian,
)
from sparse_penalized.models.data_classes import Dataset, GlmFamily  # noqa: F401
from sparse_penalized.models.likelihoods import avg_loglik, observation_scores, score_and_hessian  # noqa: F401
from sparse_penalized.models.objectives import CoxObjective, GlmObjective, LikelihoodObjective  # noqa: F401
