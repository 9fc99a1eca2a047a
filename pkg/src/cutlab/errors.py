"""Exception hierarchy shared by every module."""


class CutLabError(Exception):
    """Base class for all errors raised by cutlab."""


class ContractViolation(CutLabError, ValueError):
    """A precondition of an operation was not met."""


class GraphParseError(ContractViolation):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(ContractViolation):
    """A query demand graph does not belong to the scheme's family."""


class GuardRefusal(CutLabError, RuntimeError):
    """An exact enumeration was refused because it exceeds its size guard."""


class OracleInconsistent(CutLabError):
    """Cut-value answers contradict each other (broken scheme or non-adversarial weights)."""
