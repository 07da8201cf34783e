import contextlib
import io
from unittest import TestCase

from packaging.version import Version

from sparse_penalized import __version__, constants
from sparse_penalized.cli_app import main


class ProjectSetupTestCase(TestCase):
    def test_version(self):
        self.assertIsNotNone(__version__)

        version = Version(__version__)  # Will raise InvalidVersion() if wrong formatted
        self.assertEqual(str(version), __version__)

        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout), self.assertRaises(SystemExit) as cm:
            main(args=['version'])
        self.assertEqual(cm.exception.code, 0)
        self.assertIn(f'sparse_penalized v{__version__}', stdout.getvalue())

    def test_package_metadata(self):
        self.assertEqual(constants.RNG_NAME, 'numpy.random.PCG64')
        self.assertTrue((constants.BASE_PATH / '__init__.py').is_file())
