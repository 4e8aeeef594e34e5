"""RDF terms, solution sequences, environments and result formats."""

from .results import parse_term, read_json, read_tsv, to_json, write_json, write_tsv
from .sequence import (
    Environment,
    SolutionSequence,
    concat,
    sequences_equal_as_multisets,
    sequences_equal_as_sets,
)
from .terms import BlankNode, IRI, Literal, RdfTerm, decimal, integer, sort_key
from .values import serialize_values_block, term_to_sparql

__all__ = [
    "BlankNode", "Environment", "IRI", "Literal", "RdfTerm", "SolutionSequence",
    "concat", "decimal", "integer", "parse_term", "read_json", "read_tsv",
    "sequences_equal_as_multisets", "sequences_equal_as_sets",
    "serialize_values_block", "sort_key", "term_to_sparql", "to_json",
    "write_json", "write_tsv",
]
