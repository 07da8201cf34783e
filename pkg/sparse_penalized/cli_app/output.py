"""
    Machine output of the CLI: JSON reports on stdout or in `--out`, JSON error objects on stderr.
"""

import contextlib
import logging
import sys
from pathlib import Path

from sparse_penalized.constants import RNG_NAME
from sparse_penalized.exceptions import SparsePenalizedBaseException
from sparse_penalized.harness.io import encode_json, write_json


logger = logging.getLogger(__name__)


def error_payload(err: BaseException) -> dict:
    """
    >>> error_payload(ValueError('boom'))
    {'error': {'type': 'ValueError', 'message': 'boom'}}
    """
    return {'error': {'type': type(err).__name__, 'message': str(err)}}


@contextlib.contextmanager
def json_errors():
    """Known failures end with a JSON error object on stderr and exit code 1."""
    try:
        yield
    except (SparsePenalizedBaseException, OSError) as err:
        logger.debug('Command failed: %s', err, exc_info=True)
        sys.stderr.write(encode_json(error_payload(err)).decode('utf-8') + '\n')
        sys.exit(1)


def emit(payload: dict, *, seed: int, out: Path | None) -> None:
    """Write the report to `out` (a file path) or to stdout."""
    payload = {**payload, 'seed': seed, 'rng': RNG_NAME}
    if out is None:
        sys.stdout.write(encode_json(payload).decode('utf-8') + '\n')
    else:
        write_json(payload, out)
