from sparse_penalized.penalties.data_classes import (  # noqa: F401
    PenaltyKind,
    PenaltyProperties,
    PenaltySpec,
    RidgeConvention,
)
from sparse_penalized.penalties.functions import (  # noqa: F401
    adjusted_r2_lambda,
    gcv_lambda,
    penalty_deriv,
    penalty_deriv_at_zero_plus,
    penalty_second_deriv,
    penalty_value,
    penalty_values,
    per_coordinate_penalties,
    ric_lambda,
    total_penalty,
    universal_lambda,
)
from sparse_penalized.penalties.oracle import grid_threshold  # noqa: F401
from sparse_penalized.penalties.properties import check_properties  # noqa: F401
from sparse_penalized.penalties.thresholding import (  # noqa: F401
    scalar_objective,
    soft_threshold,
    threshold,
    threshold_array,
)
