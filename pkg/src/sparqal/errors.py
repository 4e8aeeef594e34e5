"""Exception hierarchy shared by all sparqal modules."""

from __future__ import annotations


class SparqalError(Exception):
    """Base class for every error raised by this package."""


class SparqalSyntaxError(SparqalError):
    """Malformed procedure source. Carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class ValidationFailed(SparqalError):
    def __init__(self, report):
        lines = "; ".join(str(v) for v in report)
        super().__init__(f"procedure is not well-formed: {lines}")
        self.report = report


class BlankNodeNotRepresentable(SparqalError):
    """A blank node was about to be written into a VALUES block."""


class UnassignedVariable(SparqalError):
    def __init__(self, name: str):
        super().__init__(f"solution variable {name!r} has not been assigned")
        self.name = name


class DatasetLoadError(SparqalError):
    pass


class DatasetParseError(DatasetLoadError):
    def __init__(self, path, line: int | None, message: str):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class QueryError(SparqalError):
    """The backend rejected or failed to evaluate a query.

    ``query`` holds the fully instantiated text for debugging.
    """

    def __init__(self, message: str, query: str):
        super().__init__(message)
        self.query = query


class QuerySyntaxError(QueryError):
    pass


class QueryTimeout(QueryError):
    pass


class StatementError(SparqalError):
    """Wraps a failure inside one statement, adding its source span."""

    def __init__(self, cause: Exception, span, detail: str = ""):
        where = f"line {span.line}" if span is not None else "unknown location"
        extra = f" [{detail}]" if detail else ""
        super().__init__(f"{where}{extra}: {cause}")
        self.cause = cause
        self.span = span
        self.trace = None


class LoopGuardExceeded(SparqalError):
    def __init__(self, iterations: int, span):
        where = f"line {span.line}" if span is not None else "?"
        super().__init__(f"loop at {where} exceeded {iterations} iterations")
        self.iterations = iterations
        self.span = span
        self.trace = None


class RunTimeout(SparqalError):
    """The run-level deadline passed between two statements."""

    def __init__(self, message: str = "procedure run exceeded its deadline"):
        super().__init__(message)
        self.trace = None


class BatchError(SparqalError):
    def __init__(self, message: str, key=None):
        super().__init__(message if key is None else f"{message} (batch key {key})")
        self.key = key


class UnknownProcedure(SparqalError):
    pass


class MissingParameter(SparqalError):
    pass


class InvalidMachine(SparqalError):
    pass


class MissingLabels(SparqalError):
    pass
