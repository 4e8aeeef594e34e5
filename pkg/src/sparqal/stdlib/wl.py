"""Colour refinement through the bundled WL procedure."""

from __future__ import annotations

from ..errors import MissingLabels
from ..parser import parse_procedure
from ..solutions import SolutionSequence
from .templates import format_iri, get_procedure


def wl_refinement(ds, edge: str, rounds: int, cfg=None, label: str = "rdfs:label") -> SolutionSequence:
    """Run ``rounds`` refinement rounds; returns (?v, ?lab) per labelled node.

    Raises MissingLabels if a node touching ``edge`` has no label.
    """
    from ..interpreter import run_procedure

    edge_text, label_text = format_iri(edge), format_iri(label)
    unlabelled = ds.select(
        f"SELECT ?x WHERE {{ {{ ?x {edge_text} ?y }} UNION {{ ?y {edge_text} ?x }} "
        f"FILTER NOT EXISTS {{ ?x {label_text} ?l }} }} LIMIT 1"
    )
    if len(unlabelled):
        node = next(iter(unlabelled))[0]
        raise MissingLabels(f"node {node} has no {label} value; every node needs an initial label")
    source = get_procedure("WL", {"edge": edge, "rounds": rounds, "label": label})
    result, _ = run_procedure(parse_procedure(source), ds, cfg)
    return result


def partition(seq: SolutionSequence, node_var: str = "v", label_var: str = "lab") -> set[frozenset]:
    """Group nodes by label, forgetting the label values."""
    classes: dict = {}
    for m in seq.mappings():
        classes.setdefault(m[label_var], set()).add(m[node_var])
    return {frozenset(c) for c in classes.values()}
