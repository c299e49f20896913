"""Exception hierarchy shared by every module."""


class CayleyMachinaError(Exception):
    pass


class SemigroupError(CayleyMachinaError, ValueError):
    pass


class NonAssociative(SemigroupError):
    def __init__(self, a, b, c):
        self.triple = (a, b, c)
        super().__init__(f"not associative at ({a}, {b}, {c})")


class OutOfRange(SemigroupError):
    def __init__(self, row, col, value=None, order=None):
        self.row, self.col = row, col
        msg = f"entry at row {row}, column {col} out of range"
        if value is not None and order is not None:
            msg += f" ({value} not in 0..{order - 1})"
        super().__init__(msg)


class UnknownFamily(SemigroupError):
    pass


class ParseError(SemigroupError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InternalDisagreement(CayleyMachinaError, AssertionError):
    """Two routes to the same answer disagree; always an implementation bug."""


class StateBudgetExceeded(CayleyMachinaError, RuntimeError):
    pass


class NotFinite(CayleyMachinaError, ValueError):
    pass


class BudgetExhausted(CayleyMachinaError, RuntimeError):
    pass
