from sparse_penalized.harness.best_subset import SubsetOracleResult, best_subset_oracle  # noqa: F401
from sparse_penalized.harness.data_classes import (  # noqa: F401
    ArParams,
    CovarianceSample,
    ExperimentConfig,
    ExperimentKind,
    FactorParams,
    GeneratorKind,
    RegressionParams,
    SurvivalParams,
)
from sparse_penalized.harness.experiments import EXPERIMENTS, ExperimentReport, run_experiment  # noqa: F401
from sparse_penalized.harness.generators import generate, make_rng, regression_generator, spawn_rngs  # noqa: F401
from sparse_penalized.harness.orthonormal import fit_orthonormal, orthonormal_design  # noqa: F401
