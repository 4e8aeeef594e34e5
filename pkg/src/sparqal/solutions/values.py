"""SPARQL surface syntax for terms and VALUES blocks."""

from __future__ import annotations

import re

from ..errors import BlankNodeNotRepresentable
from .terms import (
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    IRI,
    Literal,
    RdfTerm,
)

# Lexical forms that SPARQL reads back with the same datatype when written bare.
_PLAIN = {
    XSD_INTEGER: re.compile(r"^[+-]?[0-9]+$"),
    XSD_DECIMAL: re.compile(r"^[+-]?[0-9]*\.[0-9]+$"),
    XSD_DOUBLE: re.compile(r"^[+-]?([0-9]+\.[0-9]*|\.?[0-9]+)[eE][+-]?[0-9]+$"),
    XSD_BOOLEAN: re.compile(r"^(true|false)$"),
}

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_ESCAPE_RE = re.compile(r'[\\"\n\r\t]')


def quote(text: str) -> str:
    return '"' + _ESCAPE_RE.sub(lambda m: _ESCAPES[m.group()], text) + '"'


def term_to_sparql(term: RdfTerm) -> str:
    if isinstance(term, IRI):
        return f"<{term.value}>"
    if isinstance(term, Literal):
        plain = _PLAIN.get(term.datatype)
        if plain is not None and plain.match(term.lexical):
            return term.lexical
        if term.language is not None:
            return f"{quote(term.lexical)}@{term.language}"
        if term.datatype == XSD_STRING:
            return quote(term.lexical)
        return f"{quote(term.lexical)}^^<{term.datatype}>"
    if isinstance(term, BlankNode):
        raise BlankNodeNotRepresentable(
            f"blank node _:{term.label} cannot be written into a VALUES block; "
            "project IRIs or literals into variables used with QVALUES"
        )
    raise TypeError(f"not an RDF term: {term!r}")


def serialize_values_block(seq) -> str:
    """``VALUES (?a ?b) { (t t) ... }`` over the sequence's variables."""
    head = "VALUES (" + " ".join("?" + v for v in seq.variables) + ")"
    rows = [
        "(" + " ".join("UNDEF" if t is None else term_to_sparql(t) for t in row) + ")"
        for row in seq.rows()
    ]
    if not rows:
        return head + " { }"
    return head + " { " + " ".join(rows) + " }"
