from sparse_penalized.tuning.classical import SubsetCriteria, classical_criteria, criteria_table  # noqa: F401
from sparse_penalized.tuning.gcv import (  # noqa: F401
    GcvPoint,
    TuningResult,
    default_df_cost,
    default_lambda_grid,
    gcv_score,
    gcv_select,
    lambda_max,
    mle_standard_errors,
)
from sparse_penalized.tuning.inference import effective_params, sandwich_cov, standard_errors  # noqa: F401
