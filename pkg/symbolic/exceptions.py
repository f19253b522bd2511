"""
Exceptions raised by the exact algebra engine.

Everything derives from ``ToricityError`` so the management commands and
API views can catch engine failures with one clause.
"""


class ToricityError(Exception):
    """Base class for engine errors."""


class DimensionMismatchError(ToricityError):
    pass


class NotSquareError(ToricityError):
    pass


class SingularMatrixError(ToricityError):
    pass


class NotInSpanError(ToricityError):
    pass


class NotDiagonalizableError(ToricityError):
    pass


class NotSquarefreeError(ToricityError):
    pass


class IncompatibleTowerError(ToricityError):
    """Raised when elements of unrelated extension towers are combined."""


class RetryBudgetExceeded(ToricityError):
    def __init__(self, stage, attempts):
        self.stage = stage
        self.attempts = attempts
        super().__init__(f"{stage}: no certified choice after {attempts} attempts")


class GroebnerBudgetExceeded(ToricityError):
    def __init__(self, pairs, context=""):
        self.pairs = pairs
        self.context = context
        message = f"Groebner pair budget exceeded after {pairs} pairs"
        if context:
            message = f"{message} ({context})"
        super().__init__(message)


class NonHomogeneousIdealError(ToricityError):
    pass


class ZeroAlgebraError(ToricityError):
    pass


class ToralDecompositionError(ToricityError):
    pass


class BranchDisagreementError(ToricityError):
    """Two branches of a split extension tower produced different verdicts."""


class NonBinomialIdealError(ToricityError):
    pass


class PolynomialSyntaxError(ToricityError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}, column {column}: "
        elif column is not None:
            location = f"column {column}: "
        super().__init__(f"{location}{message}")


class IdealFileError(PolynomialSyntaxError):
    pass


class GraphFormatError(ToricityError):
    pass
