import logging


class LogErrors:
    """
    Log and suppress one exception. The suppressed exception is kept in `self.exception`,
    so callers can count or report it afterwards.
    """

    def __init__(self, logger=None, message: str = 'Exception suppressed: %s'):
        self.logger = logger or logging.getLogger(__name__)
        self.message = message
        self.exception: BaseException | None = None

    @property
    def failed(self) -> bool:
        return self.exception is not None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_type is not None:
            if not issubclass(exc_type, Exception):
                return False  # Never swallow KeyboardInterrupt & Co.
            self.exception = exc_value
            self.logger.warning(
                self.message,
                exc_value,
                exc_info=(exc_type, exc_value, traceback),
            )
            return True  # Suppress the exception
        return False
