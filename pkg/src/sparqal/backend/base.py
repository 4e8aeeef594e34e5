"""Engine-agnostic dataset interface."""

from __future__ import annotations

import threading
from abc import ABC, abstractmethod

from ..errors import QueryTimeout
from ..solutions import SolutionSequence

DEFAULT_PREFIXES = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "wd": "http://www.wikidata.org/entity/",
    "wdt": "http://www.wikidata.org/prop/direct/",
}


class Dataset(ABC):
    """A read-only RDF dataset that evaluates SELECT and ASK queries.

    ``spill_threshold`` is passed to every result sequence; above that many
    rows the sequence moves to a temporary file.
    """

    spill_threshold: int | None = None

    @property
    @abstractmethod
    def triple_count(self) -> int: ...

    @abstractmethod
    def _select(self, query: str) -> SolutionSequence: ...

    @abstractmethod
    def _ask(self, query: str) -> bool: ...

    def select(self, query: str, timeout: float | None = None) -> SolutionSequence:
        return _with_timeout(self._select, query, timeout)

    def ask(self, query: str, timeout: float | None = None) -> bool:
        return _with_timeout(self._ask, query, timeout)


def _with_timeout(fn, query: str, timeout: float | None):
    if timeout is None:
        return fn(query)
    box: dict = {}

    def work():
        try:
            box["value"] = fn(query)
        except BaseException as exc:  # re-raised in the caller's thread
            box["error"] = exc

    # The engine offers no cancellation, so an expired query keeps running
    # in a daemon thread and its result is dropped.
    worker = threading.Thread(target=work, daemon=True)
    worker.start()
    worker.join(timeout)
    if worker.is_alive():
        raise QueryTimeout(f"query exceeded timeout of {timeout:g}s", query)
    if "error" in box:
        raise box["error"]
    return box["value"]


def eval_select(ds: Dataset, query: str, timeout: float | None = None) -> SolutionSequence:
    return ds.select(query, timeout)


def eval_ask(ds: Dataset, query: str, timeout: float | None = None) -> bool:
    return ds.ask(query, timeout)
