"""
FIBRA - Exception hierarchy and CLI exit codes.
"""

from typing import Any, List, Optional, Sequence

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


class FibraError(Exception):
    """Base class for every error raised by the library."""

    exit_code = EXIT_NEGATIVE


class DocumentError(FibraError):
    """Input document is malformed (bad JSON, wrong shape, unknown kind)."""

    exit_code = EXIT_PARSE


class InvalidObjectError(FibraError):
    """Document parsed but the object it describes violates an invariant."""


class DuplicateLabelError(InvalidObjectError):
    pass


class UnknownPointError(InvalidObjectError):
    pass


class LabelCollisionError(InvalidObjectError):
    pass


class NotContinuousError(InvalidObjectError):
    """A map fails to preserve the specialization order."""

    def __init__(self, message: str, pair: Optional[Sequence[Any]] = None):
        super().__init__(message)
        self.pair = tuple(pair) if pair is not None else None


class NotOpenError(InvalidObjectError):
    pass


class FunctorError(InvalidObjectError):
    """Functor laws fail; `violations` lists each offending chain."""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message)
        self.violations = list(violations or [])


class WeakNaturalityError(InvalidObjectError):
    pass


class NotOverBaseError(InvalidObjectError):
    pass


class BundleMismatchError(InvalidObjectError):
    pass


class UnverifiedBundleError(InvalidObjectError):
    pass


class BaseShapeError(InvalidObjectError):
    pass


class BudgetExceededError(FibraError):
    """A backtracking search ran out of nodes. The answer is unknown, not negative."""

    exit_code = EXIT_BUDGET

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class ClassificationInconclusive(BudgetExceededError):
    """classify ran out of budget; `partial` holds the classes found so far."""

    def __init__(self, message: str, partial: Any = None, nodes: int = 0):
        super().__init__(message, nodes)
        self.partial = partial


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit-code contract."""
    if isinstance(exc, FibraError):
        return exc.exit_code
    return EXIT_NEGATIVE
