"""In-process binding to the Oxigraph SPARQL engine."""

from __future__ import annotations

import os
import re
from pathlib import Path
from typing import Iterable

import pyoxigraph as ox

from ..errors import DatasetLoadError, DatasetParseError, QueryError, QuerySyntaxError
from ..parser.lexical import mask
from ..solutions import BlankNode, IRI, Literal, SolutionSequence
from .base import DEFAULT_PREFIXES, Dataset

FORMATS = {
    "nt": ox.RdfFormat.N_TRIPLES,
    "ntriples": ox.RdfFormat.N_TRIPLES,
    "n-triples": ox.RdfFormat.N_TRIPLES,
    "ttl": ox.RdfFormat.TURTLE,
    "turtle": ox.RdfFormat.TURTLE,
}

_EMPTY_VALUES = re.compile(
    r"(?<![\w?$:])VALUES\s*(?:\((?:\s*[?$]\w+)*\s*\)|[?$]\w+)\s*\{\s*\}", re.I
)


def wrap_empty_values(query: str) -> str:
    """Wrap nested zero-row VALUES blocks in a subselect.

    Oxigraph folds a group containing ``VALUES (...) { }`` to an empty
    pattern and then drops the single row an implicit aggregate should
    produce, e.g. ``SELECT (COUNT(*) AS ?n) WHERE { VALUES (?x) { } }``
    returns no rows instead of ``n=0``. The subselect form evaluates
    correctly. Trailing VALUES clauses at brace depth 0 are left alone.
    """
    masked = mask(query)
    pieces = []
    pos = 0
    for m in _EMPTY_VALUES.finditer(masked):
        depth = masked.count("{", 0, m.start()) - masked.count("}", 0, m.start())
        if depth <= 0:
            continue
        pieces.append(query[pos : m.start()])
        pieces.append("{ SELECT * WHERE { " + query[m.start() : m.end()] + " } }")
        pos = m.end()
    if not pieces:
        return query
    pieces.append(query[pos:])
    return "".join(pieces)


def from_ox(term):
    if term is None:
        return None
    if isinstance(term, ox.NamedNode):
        return IRI(term.value)
    if isinstance(term, ox.Literal):
        if term.language:
            return Literal(term.value, language=term.language)
        return Literal(term.value, term.datatype.value)
    if isinstance(term, ox.BlankNode):
        return BlankNode(term.value)
    raise QueryError(f"unsupported term in results: {term!r}", "")


def to_ox(term):
    if isinstance(term, IRI):
        return ox.NamedNode(term.value)
    if isinstance(term, BlankNode):
        return ox.BlankNode(term.label)
    if term.language is not None:
        return ox.Literal(term.lexical, language=term.language)
    return ox.Literal(term.lexical, datatype=ox.NamedNode(term.datatype))


class OxigraphDataset(Dataset):
    """In-memory Oxigraph store. Safe for concurrent read-only queries."""

    def __init__(self, store: ox.Store | None = None, prefixes: dict[str, str] | None = None):
        self.store = store if store is not None else ox.Store()
        self.prefixes = dict(DEFAULT_PREFIXES if prefixes is None else prefixes)

    @property
    def triple_count(self) -> int:
        return len(self.store)

    def add_triples(self, triples: Iterable[tuple]) -> None:
        """Insert (s, p, o) triples given as sparqal terms."""
        self.store.extend(ox.Quad(to_ox(s), to_ox(p), to_ox(o)) for s, p, o in triples)

    def load(self, path: str | os.PathLike, fmt: str | None = None) -> None:
        path = Path(path)
        fmt = (fmt or path.suffix.lstrip(".")).lower()
        if fmt not in FORMATS:
            raise DatasetLoadError(f"{path}: unsupported RDF format {fmt!r} (use .nt or .ttl)")
        try:
            with open(path, "rb") as fh:
                self.store.load(fh, format=FORMATS[fmt])
        except SyntaxError as exc:
            raise DatasetParseError(path, getattr(exc, "lineno", None), exc.msg) from exc
        except OSError as exc:
            raise DatasetLoadError(f"{path}: {exc.strerror or exc}") from exc

    def _run(self, query: str):
        try:
            return self.store.query(wrap_empty_values(query), prefixes=self.prefixes)
        except SyntaxError as exc:
            raise QuerySyntaxError(f"SPARQL syntax error: {exc}", query) from exc
        except (OSError, ValueError, RuntimeError) as exc:
            raise QueryError(f"query evaluation failed: {exc}", query) from exc

    def _select(self, query: str) -> SolutionSequence:
        result = self._run(query)
        if not isinstance(result, ox.QuerySolutions):
            raise QueryError("expected a SELECT query", query)
        variables = [v.value for v in result.variables]
        memo: dict = {}

        def convert(term):
            if term is None:
                return None
            got = memo.get(term)
            if got is None:
                got = memo[term] = from_ox(term)
            return got

        try:
            rows = (tuple(convert(sol[i]) for i in range(len(variables))) for sol in result)
            return SolutionSequence(variables, rows, self.spill_threshold)
        except (OSError, ValueError, RuntimeError) as exc:
            raise QueryError(f"query evaluation failed: {exc}", query) from exc

    def _ask(self, query: str) -> bool:
        result = self._run(query)
        if not isinstance(result, ox.QueryBoolean):
            raise QueryError("expected an ASK query", query)
        return bool(result)


def load_dataset(paths, fmt: str | None = None, prefixes: dict[str, str] | None = None) -> OxigraphDataset:
    """Load one or more N-Triples/Turtle files into a fresh in-memory dataset.

    The format is taken from each file's extension unless ``fmt`` is given.
    """
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    ds = OxigraphDataset(prefixes=prefixes)
    for path in paths:
        ds.load(path, fmt)
    return ds
