from sparse_penalized.solver.api import fit  # noqa: F401
from sparse_penalized.solver.data_classes import FitResult, InitKind, LqaConfig  # noqa: F401
from sparse_penalized.solver.diagnostics import (  # noqa: F401
    PenaltyDiagnostics,
    StationarityReport,
    penalty_diagnostics,
    stationarity_residual,
)
from sparse_penalized.solver.newton import newton_maximize, start_value  # noqa: F401
from sparse_penalized.solver.subsets import support_mle  # noqa: F401
