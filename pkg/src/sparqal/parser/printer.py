"""Render a Procedure back to source text.

Query text is emitted verbatim, so ``parse_procedure(format_procedure(p))``
is equal to ``p``.
"""

from __future__ import annotations

from .ast import Ask, Fixpoint, Let, Loop, Procedure, Return, Times


def _condition(cond) -> str:
    if isinstance(cond, Times):
        return f"TIMES {cond.count}"
    if isinstance(cond, Fixpoint):
        return f"FIXPOINT({cond.variable})"
    assert isinstance(cond, Ask)
    return cond.query.text


def _statement(stmt, indent: str) -> list[str]:
    if isinstance(stmt, Let):
        head = f"{indent}LET {stmt.target} = ({stmt.query.text})"
        if stmt.map_spec is not None:
            head += f" MAP(?{stmt.map_spec.split_var}"
            if stmt.map_spec.selectors:
                head += ", [" + " | ".join(stmt.map_spec.selectors) + "]"
            head += ")"
            head += f" REDUCE({stmt.reduce_spec.strategy.value})"
        return [head + ";"]
    if isinstance(stmt, Loop):
        lines = [f"{indent}DO ("]
        for inner in stmt.body:
            lines.extend(_statement(inner, indent + "  "))
        lines.append(f"{indent}) WHILE ({_condition(stmt.condition)});")
        return lines
    assert isinstance(stmt, Return)
    return [f"{indent}RETURN({stmt.variable});"]


def format_procedure(ast: Procedure) -> str:
    lines: list[str] = []
    for stmt in ast.statements:
        lines.extend(_statement(stmt, ""))
    return "\n".join(lines) + "\n"
