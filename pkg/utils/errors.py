class QGaborError(Exception):
    """Root of every error raised by the analyzer."""


class ConfigError(QGaborError, ValueError):
    pass


class ParameterError(QGaborError, ValueError):
    pass


class ZeroSignalError(QGaborError, ValueError):
    pass


class NonRealWindowError(QGaborError, ValueError):
    pass


class NarrowSupportError(QGaborError, ValueError):
    pass


class FamilyFormatError(QGaborError, ValueError):
    """
    Malformed window-family JSON.

    Carries the JSON field path (e.g. ``windows[1].entries[3].q``) or the
    line/column of a syntax error so the message points at the offending input.
    """

    def __init__(self, message: str, path: str = "", line: int = None, column: int = None):
        self.path = path
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f" (line {line}, column {column})"
        elif path:
            location = f" (at {path})"
        super().__init__(f"{message}{location}")


class ConsistencyError(QGaborError, RuntimeError):
    pass


class UsageError(QGaborError, ValueError):
    """A command-line invocation missing a required option."""
