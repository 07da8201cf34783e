import logging
from unittest import TestCase

from sparse_penalized.exceptions import SolverError
from sparse_penalized.utilities.error_handling import LogErrors


class LogErrorsTestCase(TestCase):
    def test_happy_path(self):
        logger = logging.getLogger('test_logger_no_exception')

        log_output = []
        handler = logging.StreamHandler()
        handler.emit = lambda record: log_output.append(record.getMessage())
        logger.handlers = [handler]

        with LogErrors(logger) as log_errors:
            pass
        self.assertEqual(log_output, [])
        self.assertFalse(log_errors.failed)

        with LogErrors(logger, message='Grid point skipped: %s') as log_errors:
            raise SolverError('singular working system')
        self.assertEqual(log_output, ['Grid point skipped: singular working system'])
        self.assertTrue(log_errors.failed)
        self.assertIsInstance(log_errors.exception, SolverError)

    def test_keyboard_interrupt_not_suppressed(self):
        with self.assertRaises(KeyboardInterrupt):
            with LogErrors(logging.getLogger('test_logger_interrupt')):
                raise KeyboardInterrupt
