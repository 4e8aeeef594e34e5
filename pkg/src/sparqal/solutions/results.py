"""TSV and SPARQL JSON results export and import."""

from __future__ import annotations

import json
import re
from typing import TextIO

from .sequence import SolutionSequence
from .terms import XSD_STRING, BlankNode, IRI, Literal, RdfTerm
from .values import _PLAIN, quote

_UNESCAPES = {"\\\\": "\\", '\\"': '"', "\\n": "\n", "\\r": "\r", "\\t": "\t", "\\'": "'"}


def _tsv_term(term: RdfTerm | None) -> str:
    if term is None:
        return ""
    if isinstance(term, IRI):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    plain = _PLAIN.get(term.datatype)
    if plain is not None and plain.match(term.lexical):
        return term.lexical
    if term.language is not None:
        return f"{quote(term.lexical)}@{term.language}"
    if term.datatype == XSD_STRING:
        return quote(term.lexical)
    return f"{quote(term.lexical)}^^<{term.datatype}>"


def write_tsv(seq: SolutionSequence, out: TextIO) -> None:
    out.write("\t".join("?" + v for v in seq.variables) + "\n")
    for row in seq.rows():
        out.write("\t".join(_tsv_term(t) for t in row) + "\n")


_LITERAL = re.compile(r'^"((?:[^"\\]|\\.)*)"(?:@([A-Za-z0-9\-]+)|\^\^<([^>]*)>)?$')


def parse_term(text: str) -> RdfTerm | None:
    """Inverse of the TSV term encoding."""
    if text == "":
        return None
    if text.startswith("<") and text.endswith(">"):
        return IRI(text[1:-1])
    if text.startswith("_:"):
        return BlankNode(text[2:])
    m = _LITERAL.match(text)
    if m:
        lexical = re.sub(r"\\.", lambda e: _UNESCAPES.get(e.group(), e.group()), m.group(1))
        if m.group(2):
            return Literal(lexical, language=m.group(2))
        return Literal(lexical, m.group(3) or XSD_STRING)
    for datatype, pattern in _PLAIN.items():
        if pattern.match(text):
            return Literal(text, datatype)
    raise ValueError(f"cannot parse TSV term {text!r}")


def read_tsv(inp: TextIO) -> SolutionSequence:
    lines = inp.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    header = lines[0].split("\t") if lines and lines[0] else []
    variables = [h[1:] if h[:1] in "?$" else h for h in header]
    rows = []
    for line in lines[1:]:
        cells = line.split("\t")
        rows.append(tuple(parse_term(c) for c in cells))
    return SolutionSequence(variables, rows)


def _json_term(term: RdfTerm) -> dict:
    if isinstance(term, IRI):
        return {"type": "uri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "value": term.label}
    out = {"type": "literal", "value": term.lexical}
    if term.language is not None:
        out["xml:lang"] = term.language
    elif term.datatype != XSD_STRING:
        out["datatype"] = term.datatype
    return out


def to_json(seq: SolutionSequence) -> dict:
    bindings = [
        {v: _json_term(t) for v, t in zip(seq.variables, row) if t is not None}
        for row in seq.rows()
    ]
    return {"head": {"vars": list(seq.variables)}, "results": {"bindings": bindings}}


def write_json(seq: SolutionSequence, out: TextIO) -> None:
    json.dump(to_json(seq), out, indent=1)
    out.write("\n")


def term_from_json(obj: dict) -> RdfTerm:
    kind = obj["type"]
    if kind == "uri":
        return IRI(obj["value"])
    if kind == "bnode":
        return BlankNode(obj["value"])
    if kind in ("literal", "typed-literal"):
        if "xml:lang" in obj:
            return Literal(obj["value"], language=obj["xml:lang"])
        return Literal(obj["value"], obj.get("datatype", XSD_STRING))
    raise ValueError(f"unknown JSON term type {kind!r}")


def from_json(doc: dict) -> SolutionSequence:
    variables = doc["head"].get("vars", [])
    return SolutionSequence.from_mappings(
        variables,
        ({k: term_from_json(v) for k, v in b.items()} for b in doc["results"]["bindings"]),
    )


def read_json(inp: TextIO) -> SolutionSequence:
    return from_json(json.load(inp))
