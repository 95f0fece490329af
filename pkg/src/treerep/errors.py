"""Exception types shared across the package."""


class TreeRepError(Exception):
    """Base class for all package errors."""


class PrecisionExhausted(TreeRepError, ArithmeticError):
    """A verdict depends on coefficients beyond the known precision."""


class IdentityInput(TreeRepError, ValueError):
    pass


class NotElliptic(TreeRepError, ValueError):
    pass


class NotQuasiUnipotent(TreeRepError, ValueError):
    pass


class Obstructed(TreeRepError):
    """No irreducible tuple exists for the requested local monodromy."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class DegenerateInput(TreeRepError, ValueError):
    pass


class SearchBudgetExceeded(TreeRepError):
    pass


class SweepBudgetExceeded(TreeRepError):
    pass


class NumericallySingular(TreeRepError, ArithmeticError):
    pass


class UnknownGenerator(TreeRepError, KeyError):
    pass


class ParseError(TreeRepError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class DeterminantNotOne(TreeRepError, ValueError):
    pass


class ModeMismatch(TreeRepError, ValueError):
    pass
