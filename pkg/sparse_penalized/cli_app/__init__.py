"""
    CLI for usage
"""

import logging
import sys
from collections.abc import Sequence

from cli_base.autodiscover import import_all_files
from cli_base.cli_tools.version_info import print_version
from rich import print  # noqa
from tyro.extras import SubcommandApp

import sparse_penalized
from sparse_penalized import constants
from sparse_penalized.cli_app.output import json_errors


logger = logging.getLogger(__name__)

app = SubcommandApp()

# Register all CLI commands, just by import all files in this package:
import_all_files(package=__package__, init_file=__file__)

# Commands that write JSON to stdout get no version banner:
BANNER_ARGS = {'version', '--help', '-h'}


@app.command
def version():
    """Print version and exit"""
    # Pseudo command, because the version is printed on every help/version call ;)
    sys.exit(0)


def main(args: Sequence[str] | None = None):
    argv = list(sys.argv[1:] if args is None else args)
    if not argv or argv[0] in BANNER_ARGS:
        print_version(sparse_penalized)
    with json_errors():
        app.cli(
            prog='sparse_penalized_app',
            description=constants.CLI_EPILOG,
            use_underscores=False,  # use hyphens instead of underscores
            sort_subcommands=True,
            args=argv,
        )
