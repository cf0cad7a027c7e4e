"""
Error types raised across the engine.

The CLI maps every MonomialError to exit code 2.
"""

from typing import Optional


class MonomialError(Exception):
    """Base class for all engine errors"""


class UsageError(MonomialError, ValueError):
    """Operands or inputs that do not fit the operation (mismatched p or d, missing values)"""


class ShapeError(MonomialError, ValueError):
    """A structured polynomial violates its declared clause/term bounds"""


class PreconditionError(MonomialError, ValueError):
    """A documented precondition does not hold"""


class ConfigurationError(MonomialError, ValueError):
    """Inconsistent run configuration"""


class ResourceLimitError(MonomialError):
    """Instance too large for the configured cap or memory budget"""


class SerializationError(MonomialError):
    """A value cannot be written in the requested format"""


class CircuitSyntaxError(MonomialError, ValueError):
    """Syntax or structural error in a text input, with its location"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(f"{where}{message}")
