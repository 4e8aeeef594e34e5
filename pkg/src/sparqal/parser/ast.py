"""Procedure syntax tree.

Spans are excluded from equality so that a pretty-printed and re-parsed
procedure compares equal to the original.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

from .lexical import QvaluesSite


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    line: int
    column: int


@dataclass(frozen=True)
class QueryTemplate:
    text: str
    sites: tuple[QvaluesSite, ...]
    kind: str  # "SELECT" or "ASK"

    @property
    def variables(self) -> list[str]:
        """Referenced solution variables, in first-occurrence order."""
        seen: dict[str, None] = {}
        for site in self.sites:
            seen.setdefault(site.name)
        return list(seen)


class ReduceStrategy(enum.Enum):
    UNION = "UNION"


@dataclass(frozen=True)
class MapSpec:
    split_var: str  # without the leading '?'
    selectors: tuple[str, ...] = ()


@dataclass(frozen=True)
class ReduceSpec:
    strategy: ReduceStrategy = ReduceStrategy.UNION


@dataclass(frozen=True)
class Let:
    target: str
    query: QueryTemplate
    map_spec: MapSpec | None = None
    reduce_spec: ReduceSpec | None = None
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Times:
    count: int


@dataclass(frozen=True)
class Fixpoint:
    variable: str


@dataclass(frozen=True)
class Ask:
    query: QueryTemplate


Condition = Union[Times, Fixpoint, Ask]


@dataclass(frozen=True)
class Loop:
    body: tuple["Statement", ...]
    condition: Condition
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Return:
    variable: str
    span: Span | None = field(default=None, compare=False)


Statement = Union[Let, Loop, Return]


@dataclass(frozen=True)
class Procedure:
    statements: tuple[Statement, ...]

    @property
    def source_spans(self) -> list[Span | None]:
        return [s.span for s in self.statements]


def walk(statements):
    """Yield every statement, depth first, in source order."""
    for stmt in statements:
        yield stmt
        if isinstance(stmt, Loop):
            yield from walk(stmt.body)
