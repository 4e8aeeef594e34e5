"""Well-formedness checks for parsed procedures."""

from __future__ import annotations

from dataclasses import dataclass

from .ast import Ask, Fixpoint, Let, Loop, Procedure, Return, Span


@dataclass(frozen=True)
class Violation:
    kind: str  # "return not last", "missing return" or "unassigned variable"
    message: str
    span: Span | None = None

    def __str__(self) -> str:
        where = f" at line {self.span.line}" if self.span is not None else ""
        return f"{self.kind}{where}: {self.message}"


class ValidationReport(list):
    """List of Violation; empty means the procedure is well-formed."""

    @property
    def ok(self) -> bool:
        return not self


def _check_uses(statements, assigned: set[str], report: ValidationReport) -> None:
    for stmt in statements:
        if isinstance(stmt, Let):
            for name in stmt.query.variables:
                if name not in assigned:
                    report.append(Violation(
                        "unassigned variable",
                        f"QVALUES({name}) used before any LET assigns {name}",
                        stmt.span,
                    ))
            assigned.add(stmt.target)
        elif isinstance(stmt, Loop):
            _check_uses(stmt.body, assigned, report)
            cond = stmt.condition
            names = []
            if isinstance(cond, Fixpoint):
                names = [cond.variable]
            elif isinstance(cond, Ask):
                names = cond.query.variables
            for name in names:
                if name not in assigned:
                    report.append(Violation(
                        "unassigned variable",
                        f"loop condition uses {name} before any LET assigns it",
                        stmt.span,
                    ))
        elif isinstance(stmt, Return):
            if stmt.variable not in assigned:
                report.append(Violation(
                    "unassigned variable",
                    f"RETURN({stmt.variable}) names a variable never assigned before it",
                    stmt.span,
                ))


def _returns(statements, top_level: bool):
    for i, stmt in enumerate(statements):
        if isinstance(stmt, Return):
            yield stmt, top_level and i == len(statements) - 1
        elif isinstance(stmt, Loop):
            yield from _returns(stmt.body, False)


def validate_procedure(ast: Procedure) -> ValidationReport:
    report = ValidationReport()
    returns = list(_returns(ast.statements, True))
    for stmt, is_last in returns:
        if not is_last:
            report.append(Violation(
                "return not last",
                "only the final statement of a procedure may be RETURN",
                stmt.span,
            ))
    if not returns:
        last = ast.statements[-1].span if ast.statements else None
        report.append(Violation("missing return", "procedure must end with RETURN", last))
    _check_uses(ast.statements, set(), report)
    return report
