"""Recursive-descent parser for procedure source.

Grammar (keywords are case-insensitive)::

    procedure  := statement*
    statement  := LET name '=' '(' select ')' [batch] ';'
                | DO '(' statement+ ')' WHILE '(' condition ')' ';'
                | RETURN '(' name ')' ';'
    batch      := MAP '(' ?var [',' '[' [select ('|' select)*] ']'] ')'
                  [REDUCE '(' UNION ')']
    condition  := TIMES int | FIXPOINT '(' name ')' | ask
"""

from __future__ import annotations

import re

from ..errors import SparqalSyntaxError
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
)
from .lexical import (
    LexError,
    line_col,
    mask,
    matching_paren,
    mentions_variable,
    projected_variables,
    query_kind,
    scan_qvalues,
    split_top_level,
)

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<var>[?$][A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[()=;\[\],|])"
)


def parse_template(text: str, expected_kind: str | None = None) -> QueryTemplate:
    """Build a QueryTemplate from standalone SPARQL text."""
    masked = mask(text)
    kind = query_kind(text, masked)
    if expected_kind is not None and kind != expected_kind:
        raise ValueError(f"expected a {expected_kind} query, found {kind or 'no query form'}")
    return QueryTemplate(text, tuple(scan_qvalues(text, masked)), kind or "")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        try:
            self.masked = mask(text)
        except LexError as exc:
            self._fail(str(exc), exc.offset)
        self.pos = 0

    # -- token helpers -------------------------------------------------

    def _fail(self, message: str, offset: int | None = None):
        line, col = line_col(self.text, self.pos if offset is None else offset)
        raise SparqalSyntaxError(message, line, col)

    def _skip_ws(self):
        m = re.compile(r"\s*").match(self.masked, self.pos)
        self.pos = m.end()

    def _peek(self):
        self._skip_ws()
        if self.pos >= len(self.masked):
            return None, None
        m = _TOKEN.match(self.masked, self.pos)
        if m is None:
            return "other", self.masked[self.pos]
        kind = m.lastgroup
        return kind, m.group(kind)

    def _next(self):
        kind, value = self._peek()
        if kind is None:
            self._fail("unexpected end of input")
        if kind == "other":
            self._fail(f"unexpected character {value!r}")
        self.pos += len(value)
        return kind, value

    def _expect_punct(self, punct: str, context: str):
        kind, value = self._peek()
        if kind != "punct" or value != punct:
            found = "end of input" if kind is None else repr(value)
            what = "missing semicolon" if punct == ";" else f"expected {punct!r}"
            self._fail(f"{what} {context}, found {found}")
        self.pos += 1

    def _expect_keyword(self, keyword: str):
        kind, value = self._peek()
        if kind != "name" or value.upper() != keyword:
            self._fail(f"expected {keyword}")
        self.pos += len(value)

    def _name(self, context: str) -> str:
        kind, value = self._peek()
        if kind != "name":
            self._fail(f"expected a variable name {context}")
        self.pos += len(value)
        return value

    def _span(self, start: int) -> Span:
        line, col = line_col(self.text, start)
        return Span(start, self.pos, line, col)

    def _balanced(self) -> tuple[int, int]:
        """Consume '(' ... ')' and return the offsets of the inner text."""
        self._skip_ws()
        if self.pos >= len(self.masked) or self.masked[self.pos] != "(":
            self._fail("expected '('")
        close = matching_paren(self.masked, self.pos)
        if close < 0:
            self._fail("unbalanced parentheses")
        inner = (self.pos + 1, close)
        self.pos = close + 1
        return inner

    def _template(self, start: int, end: int, expected: str) -> QueryTemplate:
        raw = self.text[start:end]
        masked = self.masked[start:end]
        kind = query_kind(raw, masked)
        if kind != expected:
            self._fail(f"expected a {expected} query, found {kind or 'no query form'}", start)
        try:
            sites = scan_qvalues(raw, masked)
        except LexError as exc:
            self._fail(str(exc), start + exc.offset)
        return QueryTemplate(raw, tuple(sites), kind)

    # -- grammar -------------------------------------------------------

    def procedure(self) -> Procedure:
        statements = []
        while self._peek()[0] is not None:
            statements.append(self.statement())
        return Procedure(tuple(statements))

    def statement(self):
        start = self.pos
        self._skip_ws()
        start = self.pos
        kind, value = self._peek()
        if kind != "name":
            self._fail("expected LET, DO or RETURN")
        keyword = value.upper()
        self.pos += len(value)
        if keyword == "LET":
            return self._let(start)
        if keyword == "DO":
            return self._loop(start)
        if keyword == "RETURN":
            self._expect_punct("(", "after RETURN")
            name = self._name("in RETURN")
            self._expect_punct(")", "after RETURN variable")
            self._expect_punct(";", "after RETURN")
            return Return(name, self._span(start))
        self._fail(f"unknown keyword {value!r}", start)

    def _let(self, start: int) -> Let:
        target = self._name("after LET")
        self._expect_punct("=", "after LET variable")
        q_start, q_end = self._balanced()
        query = self._template(q_start, q_end, "SELECT")
        map_spec = reduce_spec = None
        kind, value = self._peek()
        if kind == "name" and value.upper() == "MAP":
            self.pos += len(value)
            map_spec = self._map_spec()
            reduce_spec = ReduceSpec()
            kind, value = self._peek()
        if kind == "name" and value.upper() == "REDUCE":
            if map_spec is None:
                self._fail("REDUCE without MAP")
            self.pos += len(value)
            self._expect_punct("(", "after REDUCE")
            strategy = self._name("in REDUCE").upper()
            if strategy not in ReduceStrategy.__members__:
                self._fail(f"unsupported reduce strategy {strategy!r}")
            reduce_spec = ReduceSpec(ReduceStrategy[strategy])
            self._expect_punct(")", "after REDUCE strategy")
        self._expect_punct(";", "after LET statement")
        return Let(target, query, map_spec, reduce_spec, self._span(start))

    def _map_spec(self) -> MapSpec:
        self._expect_punct("(", "after MAP")
        kind, value = self._next()
        if kind != "var":
            self._fail("MAP expects a SPARQL variable such as ?v")
        split_var = value[1:]
        selectors: list[str] = []
        kind, value = self._peek()
        if kind == "punct" and value == ",":
            self.pos += 1
            self._expect_punct("[", "to open the selector list")
            try:
                pieces, close = split_top_level(self.masked, self.pos, "|", "]")
            except LexError:
                self._fail("unterminated selector list")
            for a, b in pieces:
                raw = self.text[a:b].strip()
                if not raw and len(pieces) == 1:
                    continue
                selectors.append(self._selector(raw, split_var, a))
            self.pos = close + 1
        self._expect_punct(")", "after MAP arguments")
        return MapSpec(split_var, tuple(selectors))

    def _selector(self, raw: str, split_var: str, offset: int) -> str:
        if query_kind(raw) != "SELECT":
            self._fail("MAP selectors must be SELECT queries", offset)
        projected = projected_variables(raw)
        if projected is None or len(projected) != 1:
            self._fail("MAP selectors must project exactly one variable", offset)
        if not mentions_variable(raw, split_var):
            self._fail(f"MAP selector does not mention ?{split_var}", offset)
        return raw

    def _loop(self, start: int) -> Loop:
        self._expect_punct("(", "after DO")
        body = []
        while True:
            kind, value = self._peek()
            if kind is None:
                self._fail("unbalanced parentheses: DO body is not closed")
            if kind == "punct" and value == ")":
                break
            body.append(self.statement())
        if not body:
            self._fail("DO body must contain at least one statement")
        self.pos += 1
        self._expect_keyword("WHILE")
        condition = self._condition()
        self._expect_punct(";", "after WHILE condition")
        return Loop(tuple(body), condition, self._span(start))

    def _condition(self):
        self._skip_ws()
        open_at = self.pos
        inner_start, inner_end = self._balanced()
        after = self.pos
        self.pos = inner_start
        kind, value = self._peek()
        word = value.upper() if kind == "name" else None
        if word == "TIMES":
            self.pos += len(value)
            kind, value = self._next()
            if kind != "int":
                self._fail("TIMES expects a positive integer")
            if int(value) < 1:
                self._fail("TIMES count must be at least 1")
            cond = Times(int(value))
        elif word == "FIXPOINT":
            self.pos += len(value)
            self._expect_punct("(", "after FIXPOINT")
            cond = Fixpoint(self._name("in FIXPOINT"))
            self._expect_punct(")", "after FIXPOINT variable")
        else:
            if query_kind(self.text[inner_start:inner_end], self.masked[inner_start:inner_end]) != "ASK":
                self._fail("malformed condition: expected TIMES, FIXPOINT or an ASK query", open_at)
            self.pos = after
            return Ask(self._template(inner_start, inner_end, "ASK"))
        self._skip_ws()
        if self.pos != inner_end:
            self._fail("malformed condition: unexpected text")
        self.pos = after
        return cond


def parse_procedure(text: str) -> Procedure:
    """Parse procedure source into a Procedure tree.

    Raises SparqalSyntaxError with a line and column on malformed input.
    """
    return _Parser(text).procedure()
