class EnumeratorError(Exception):
    """Base class for all errors raised by qwe"""


class InputValidationError(EnumeratorError, ValueError):
    """Malformed or inconsistent input (code files, networks, Pauli text)"""


class ResourceCapError(EnumeratorError, RuntimeError):
    """A configured size cap would be exceeded"""

    def __init__(self, message: str, step_index: int | None = None):
        super().__init__(message)
        self.step_index = step_index


class ConsistencyError(EnumeratorError, RuntimeError):
    """Two independent computations disagree, or an invariant failed"""


class NonRationalCoefficientError(ConsistencyError):
    """A coefficient that must be rational kept an irrational cyclotomic part"""
