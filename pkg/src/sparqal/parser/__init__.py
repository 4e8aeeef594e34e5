"""Procedure source parsing, validation and printing."""

from .ast import (
    Ask,
    Fixpoint,
    Let,
    Loop,
    MapSpec,
    Procedure,
    QueryTemplate,
    ReduceSpec,
    ReduceStrategy,
    Return,
    Span,
    Times,
    walk,
)
from .lexical import QvaluesSite, scan_qvalues
from .parse import parse_procedure, parse_template
from .printer import format_procedure
from .validate import ValidationReport, Violation, validate_procedure

__all__ = [
    "Ask", "Fixpoint", "Let", "Loop", "MapSpec", "Procedure", "QueryTemplate",
    "QvaluesSite", "ReduceSpec", "ReduceStrategy", "Return", "Span", "Times",
    "ValidationReport", "Violation", "format_procedure", "parse_procedure",
    "parse_template", "scan_qvalues", "validate_procedure", "walk",
]
