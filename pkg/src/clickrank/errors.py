"""Exception types shared across the package."""


class ClickrankError(Exception):
    """Base class for every error this package raises deliberately."""


class InvalidInputError(ClickrankError, ValueError):
    """A caller supplied a value outside an operation's domain."""


class ConflictError(ClickrankError):
    """A write collided with existing state (duplicate id, re-registration)."""


class AuthenticationError(ClickrankError):
    """Credentials or token rejected.

    One error kind for every failure mode so callers cannot distinguish an
    unknown user from a wrong password.
    """


class OrphanCloseError(ConflictError):
    """A close notification arrived with no pending open to pair with."""


class LogParseError(ClickrankError):
    """An event-log line could not be parsed or applied."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
