"""Exception hierarchy shared by every slicekit module."""

from __future__ import annotations


class SliceKitError(Exception):
    """Base class for all slicekit errors."""


# -- front end ---------------------------------------------------------------


class MiniJSyntaxError(SliceKitError):
    """Malformed MiniJ source. Carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class NameResolutionError(MiniJSyntaxError):
    """Raised by the name-resolution step that runs during parsing."""


class DuplicateDecl(NameResolutionError):
    pass


class UseOfUndeclared(NameResolutionError):
    pass


class ShapeMismatch(NameResolutionError):
    """A scalar was indexed, or an array was used without an index."""


class UnknownLabel(SliceKitError):
    def __init__(self, labels):
        labels = sorted(labels)
        super().__init__(f"unknown label(s): {', '.join(map(str, labels))}")
        self.labels = labels


# -- analyses ----------------------------------------------------------------


class AnalysisError(SliceKitError):
    """An analysis could not be carried out for the given criterion."""


class InvalidCriterion(AnalysisError):
    pass


class OccurrenceNotFound(AnalysisError):
    pass


class StatementNeverExecuted(AnalysisError):
    def __init__(self, statement: int, input_index: int):
        super().__init__(
            f"statement {statement} never executes under input #{input_index + 1}"
        )
        self.statement = statement
        self.input_index = input_index


class ContradictoryFixing(AnalysisError):
    pass


class NoDefinition(AnalysisError):
    pass


class InvalidVariable(AnalysisError):
    pass


# -- interpreter -------------------------------------------------------------


class MiniJRuntimeError(SliceKitError):
    """Raised while executing a MiniJ program.

    ``occurrence`` is the ``(label, k)`` pair of the failing step;
    ``observations`` holds any watched values recorded before it.
    """

    def __init__(self, message: str, occurrence: tuple[int, int] | None = None):
        if occurrence is not None:
            message = f"{message} at statement {occurrence[0]} (occurrence {occurrence[1]})"
        super().__init__(message)
        self.occurrence = occurrence
        self.observations: tuple = ()


class DivisionByZero(MiniJRuntimeError):
    pass


class IndexOutOfBounds(MiniJRuntimeError):
    pass


class StepLimitExceeded(MiniJRuntimeError):
    pass
