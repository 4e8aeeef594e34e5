"""Optional binding to a remote SPARQL protocol endpoint."""

from __future__ import annotations

import json
import urllib.error
import urllib.parse
import urllib.request

from ..errors import QueryError, QuerySyntaxError, QueryTimeout
from ..solutions import SolutionSequence
from ..solutions.results import from_json
from .base import DEFAULT_PREFIXES, Dataset


class HttpSparqlDataset(Dataset):
    """Evaluates queries by POSTing them to ``endpoint``.

    Results are requested as SPARQL JSON. Default prefixes are prepended
    as PREFIX declarations.
    """

    def __init__(self, endpoint: str, prefixes: dict[str, str] | None = None, http_timeout: float = 60.0):
        self.endpoint = endpoint
        self.prefixes = dict(DEFAULT_PREFIXES if prefixes is None else prefixes)
        self.http_timeout = http_timeout

    def _prologue(self) -> str:
        return "".join(f"PREFIX {k}: <{v}>\n" for k, v in self.prefixes.items())

    def _request(self, query: str) -> dict:
        body = urllib.parse.urlencode({"query": self._prologue() + query}).encode()
        req = urllib.request.Request(
            self.endpoint,
            data=body,
            headers={
                "Accept": "application/sparql-results+json",
                "Content-Type": "application/x-www-form-urlencoded",
            },
        )
        try:
            with urllib.request.urlopen(req, timeout=self.http_timeout) as resp:
                return json.load(resp)
        except urllib.error.HTTPError as exc:
            detail = exc.read().decode("utf-8", "replace")[:500]
            cls = QuerySyntaxError if exc.code == 400 else QueryError
            raise cls(f"endpoint returned HTTP {exc.code}: {detail}", query) from exc
        except TimeoutError as exc:
            raise QueryTimeout("endpoint request timed out", query) from exc
        except (urllib.error.URLError, OSError, ValueError) as exc:
            raise QueryError(f"endpoint request failed: {exc}", query) from exc

    @property
    def triple_count(self) -> int:
        seq = self._select("SELECT (COUNT(*) AS ?n) WHERE { ?s ?p ?o }")
        return int(next(iter(seq))[0].lexical)

    def _select(self, query: str) -> SolutionSequence:
        doc = self._request(query)
        if "results" not in doc:
            raise QueryError("expected SELECT results", query)
        seq = from_json(doc)
        if self.spill_threshold is not None and len(seq) > self.spill_threshold:
            seq = SolutionSequence(seq.variables, seq.rows(), self.spill_threshold)
        return seq

    def _ask(self, query: str) -> bool:
        doc = self._request(query)
        if "boolean" not in doc:
            raise QueryError("expected an ASK result", query)
        return bool(doc["boolean"])
