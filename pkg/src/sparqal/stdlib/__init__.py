"""Bundled procedures, Turing-machine compiler and graph fixtures."""

from .templates import format_iri, get_procedure, list_procedures, manifest, parameters
from .turing import MACHINES, TuringMachineSpec, simulate, tm_to_procedure
from .wl import partition, wl_refinement

__all__ = [
    "MACHINES", "TuringMachineSpec", "format_iri", "get_procedure",
    "list_procedures", "manifest", "parameters", "partition", "simulate",
    "tm_to_procedure", "wl_refinement",
]
