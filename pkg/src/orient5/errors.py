"""Exception hierarchy. The CLI maps each class to an exit code."""


class Orient5Error(Exception):
    exit_code = 1


class InputError(Orient5Error, ValueError):
    """Malformed input: bad JSON, duplicate edges, self-loops, bad multiplicities."""

    exit_code = 2


class PreconditionError(Orient5Error, ValueError):
    """Well-formed input that an operation is not defined for (wrong diameter, ...)."""

    exit_code = 3


class BudgetExhausted(Orient5Error):
    exit_code = 4


class VerificationError(Orient5Error, RuntimeError):
    """A construction failed its own BFS re-check. Always a defect; never swallowed."""

    exit_code = 1
