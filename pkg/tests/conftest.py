import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from sparqal.backend import OxigraphDataset, load_dataset  # noqa: E402
from sparqal.solutions import IRI, Literal  # noqa: E402
from sparqal.stdlib.graphs import EDGE, NODE, edge_triples, fixture_path, node_iri  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ZIKA = "http://example.org/zika/"
EDGE_TEXT = f"<{EDGE.value}>"
RDFS_LABEL = IRI("http://www.w3.org/2000/01/rdf-schema#label")


def iri(i: int) -> str:
    return node_iri(i).value


def index_of(term) -> int:
    return int(term.value[len(NODE) + 1 :])


def graph(edges, extra=()):
    ds = OxigraphDataset()
    ds.add_triples(edge_triples(edges))
    ds.add_triples(extra)
    return ds


def random_edges(rng: random.Random, n: int, p: float, self_loops=False):
    edges = [
        (u, v) for u in range(n) for v in range(n) if (self_loops or u != v) and rng.random() < p
    ]
    if not edges and n > 1:
        edges = [(0, 1)]
    return edges


def labels_triples(labels: dict):
    return [(node_iri(v), RDFS_LABEL, Literal(str(lab))) for v, lab in labels.items()]


def as_float(term) -> float:
    return float(term.lexical)


@pytest.fixture(scope="session")
def zika_ds():
    return load_dataset([fixture_path("zika.nt")])


@pytest.fixture(scope="session")
def metro_ds():
    return load_dataset([fixture_path("metro.nt")])


# One line per acceptance criterion, echoed at the end of the run so the
# verdicts show up even when output capture is on.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
