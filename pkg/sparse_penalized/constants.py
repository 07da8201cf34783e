from pathlib import Path

import sparse_penalized


CLI_EPILOG = 'Sparse penalized likelihood: fit, tune, simulate and run Monte Carlo experiments'
DEV_CLI_DESCRIPTION = 'sparse_penalized development: tests, lint, mypy, nox and acceptance experiments'

BASE_PATH = Path(sparse_penalized.__file__).parent

# Default SCAD shape parameter:
SCAD_DEFAULT_A = 3.7

# Name of the bit generator recorded in every report:
RNG_NAME = 'numpy.random.PCG64'

# Exhaustive subset search is refused above this many candidate columns:
EXHAUSTIVE_MAX_D = 15
