"""Exception hierarchy shared by all modules.

The CLI maps :class:`PreconditionError` (and subclasses) to exit code 2 and
anything else to exit code 1.
"""


class PreconditionError(ValueError):
    """An input violates the documented precondition of an operation."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.message = message
        self.path = path

    code = "precondition"


class CapacityError(PreconditionError):
    """The subset enumeration would exceed the configured cap."""

    code = "capacity"


class InternalConsistencyError(RuntimeError):
    """A structural theorem that the code relies on was observed to fail."""

    code = "internal"
