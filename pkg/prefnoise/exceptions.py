from typing import Any, Optional


class PrefNoiseException(Exception):
    """Base exception for prefnoise operations."""
    pass


class ConfigurationError(PrefNoiseException, ValueError):
    """Invalid specification, configuration file or argument combination."""
    pass


class NoiseDependencyError(PrefNoiseException):
    """A noise kind needs an ensemble or encoder that was not supplied."""
    pass


class TrainingDivergedError(PrefNoiseException):
    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        self.diagnostics = diagnostics or {}
        details = ', '.join(f'{k}={v}' for k, v in self.diagnostics.items())
        super().__init__(f'{message} ({details})' if details else message)


class TransportException(PrefNoiseException):
    def __init__(self, message: str, attempts: int = 0, last_error: Optional[BaseException] = None):
        self.attempts = attempts
        self.last_error = last_error
        super().__init__(message)


class ResponseParseError(PrefNoiseException):
    def __init__(self, message: str, raw_response: Any = None):
        self.raw_response = raw_response
        super().__init__(f'{message}: {raw_response!r}')


class ReportFormatError(PrefNoiseException):
    """Results CSV is missing a column or holds a row that does not parse."""
    pass


class ExperimentIOError(PrefNoiseException):
    def __init__(self, message: str, records_written: int = 0):
        self.records_written = records_written
        super().__init__(f'{message} (partial results: {records_written} records written before the failure)')
