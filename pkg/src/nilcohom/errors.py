"""Exception hierarchy. CLI exit codes hang off ``exit_code``."""


class NilcohomError(Exception):
    exit_code = 1


class DimensionMismatch(NilcohomError, ValueError):
    pass


class ParseError(NilcohomError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class JacobiError(NilcohomError):
    def __init__(self, message, generator=None):
        self.generator = generator
        super().__init__(message)


class NotClosedError(NilcohomError):
    def __init__(self, message, dw=None):
        self.dw = dw
        super().__init__(message)


class DegenerateFormError(NilcohomError):
    pass


class OddDimensionError(NilcohomError):
    pass


class OracleMismatch(NilcohomError):
    """Two independent computations of the same invariant disagree.

    This always indicates a sign-convention or implementation bug.
    """

    exit_code = 3


class InputError(NilcohomError):
    """Unreadable input: missing file or unknown catalog name."""

    exit_code = 2
