"""Exception taxonomy shared by the library and the CLI exit-code mapping"""


class EdgeColouringError(Exception):
    """Base class for every error raised by this package"""


class InputError(EdgeColouringError, ValueError):
    """The caller handed us something malformed or outside a precondition"""


class GraphError(InputError):
    """Invalid graph construction or a graph-level precondition failure"""


class ColouringError(InputError):
    """Incomplete, out-of-range or improper edge colouring"""


class FormatError(InputError):
    """Text input that does not follow one of the file formats"""

    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(EdgeColouringError):
    """A search ran out of decision nodes before it could answer"""


class InvariantViolation(EdgeColouringError):
    """An internal certificate check failed; always an implementation bug"""
