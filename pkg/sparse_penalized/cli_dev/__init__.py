"""
    Development CLI of sparse_penalized

    Commands live in the modules of this package: `quality` (test, lint, mypy, nox, coverage)
    and `acceptance` (the full-scale Monte Carlo experiments with their checks).
"""

import importlib
import logging
import sys
from collections.abc import Sequence

from bx_py_utils.path import assert_is_file
from cli_base.autodiscover import import_all_files
from cli_base.cli_tools.dev_tools import run_coverage, run_nox, run_unittest_cli
from cli_base.cli_tools.version_info import print_version
from typeguard import install_import_hook
from tyro.extras import SubcommandApp

import sparse_penalized
from sparse_penalized import constants


# Every annotated function of the package is checked at runtime while the tests run.
# The unittest loader imports sparse_penalized before any test module, so the hook goes here:
install_import_hook(packages=('sparse_penalized',))
importlib.reload(sparse_penalized)


logger = logging.getLogger(__name__)

PACKAGE_ROOT = constants.BASE_PATH.parent
assert_is_file(PACKAGE_ROOT / 'pyproject.toml')  # source checkout only

# Test runner commands get the raw argv:
PASSTHROUGH_COMMANDS = {
    'test': run_unittest_cli,
    'nox': run_nox,
    'coverage': run_coverage,
}


app = SubcommandApp()

import_all_files(package=__package__, init_file=__file__)


@app.command
def version():
    """Print the sparse_penalized version"""
    sys.exit(0)  # print_version() in main() already did


def main(args: Sequence[str] | None = None):
    print_version(sparse_penalized)

    if len(sys.argv) >= 2 and (passthrough := PASSTHROUGH_COMMANDS.get(sys.argv[1])):
        passthrough(argv=sys.argv, exit_after_run=True)

    app.cli(
        prog='sparse_penalized_dev',
        description=constants.DEV_CLI_DESCRIPTION,
        use_underscores=False,
        sort_subcommands=True,
        args=args,
    )
