"""RDF terms as small immutable value objects.

Equality is syntactic: IRIs by string, literals by lexical form, datatype
and language tag, blank nodes by label. "1.0"^^xsd:decimal and
"1"^^xsd:decimal are different terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_DOUBLE = XSD + "double"
XSD_BOOLEAN = XSD + "boolean"
RDF_LANGSTRING = RDF + "langString"

_ABSOLUTE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def __post_init__(self):
        if not _ABSOLUTE.match(self.value):
            raise ValueError(f"IRI is not absolute: {self.value!r}")

    def __str__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING
    language: str | None = None

    def __post_init__(self):
        if self.language is not None:
            object.__setattr__(self, "language", self.language.lower())
            object.__setattr__(self, "datatype", RDF_LANGSTRING)
        elif self.datatype == RDF_LANGSTRING:
            raise ValueError("rdf:langString literal requires a language tag")

    def numeric_value(self) -> float | int | None:
        """Python number for numeric datatypes, else None."""
        try:
            if self.datatype == XSD_INTEGER:
                return int(self.lexical)
            if self.datatype in (XSD_DECIMAL, XSD_DOUBLE, XSD + "float"):
                return float(self.lexical)
        except ValueError:
            return None
        return None

    def __str__(self) -> str:
        from .values import term_to_sparql

        return term_to_sparql(self)


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __str__(self) -> str:
        return f"_:{self.label}"


RdfTerm = Union[IRI, Literal, BlankNode]


def sort_key(term: RdfTerm | None) -> tuple:
    """Total order over terms (unbound first) for deterministic output."""
    if term is None:
        return (0,)
    if isinstance(term, BlankNode):
        return (1, term.label)
    if isinstance(term, IRI):
        return (2, term.value)
    return (3, term.datatype, term.language or "", term.lexical)


def integer(value: int) -> Literal:
    return Literal(str(value), XSD_INTEGER)


def decimal(value) -> Literal:
    return Literal(str(value), XSD_DECIMAL)
