"""SPARQL evaluation backends."""

from .base import DEFAULT_PREFIXES, Dataset, eval_ask, eval_select
from .http import HttpSparqlDataset
from .oxigraph import OxigraphDataset, load_dataset, wrap_empty_values

__all__ = [
    "DEFAULT_PREFIXES", "Dataset", "HttpSparqlDataset", "OxigraphDataset",
    "eval_ask", "eval_select", "load_dataset", "wrap_empty_values",
]
