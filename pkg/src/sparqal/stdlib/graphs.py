"""Graph fixtures: small generators, N-Triples output and bundled files."""

from __future__ import annotations

import json
import random
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from ..solutions import IRI, Literal, RdfTerm

EX = "http://example.org/"
NODE = EX + "node/"
EDGE = IRI(EX + "edge")
WD = "http://www.wikidata.org/entity/"
WDT = "http://www.wikidata.org/prop/direct/"
RDFS_LABEL = IRI("http://www.w3.org/2000/01/rdf-schema#label")

Edge = tuple[int, int]
Triple = tuple[RdfTerm, IRI, RdfTerm]


def node_iri(i: int, ns: str = NODE) -> IRI:
    return IRI(f"{ns}n{i:03d}")


def random_digraph(n: int, p: float, rng: random.Random, self_loops: bool = False) -> list[Edge]:
    return [
        (u, v)
        for u in range(n)
        for v in range(n)
        if (self_loops or u != v) and rng.random() < p
    ]


def path_graph(n: int) -> list[Edge]:
    return [(i, i + 1) for i in range(n - 1)]


def edge_triples(edges: Iterable[Edge], predicate: IRI = EDGE, ns: str = NODE) -> list[Triple]:
    return [(node_iri(u, ns), predicate, node_iri(v, ns)) for u, v in edges]


def dataset_from_triples(triples: Iterable[Triple]):
    from ..backend import OxigraphDataset

    ds = OxigraphDataset()
    ds.add_triples(triples)
    return ds


def dataset_from_edges(edges: Iterable[Edge], predicate: IRI = EDGE):
    return dataset_from_triples(edge_triples(edges, predicate))


def _nt_term(term: RdfTerm) -> str:
    if isinstance(term, IRI):
        return f"<{term.value}>"
    if isinstance(term, Literal):
        from ..solutions.values import quote

        if term.language is not None:
            return f"{quote(term.lexical)}@{term.language}"
        return f"{quote(term.lexical)}^^<{term.datatype}>"
    return f"_:{term.label}"


def to_ntriples(triples: Iterable[Triple]) -> str:
    return "".join(f"{_nt_term(s)} {_nt_term(p)} {_nt_term(o)} .\n" for s, p, o in triples)


# -- citation graph of the batching walkthrough -----------------------------

ZIKA_EDGES = [("a2", "a1"), ("a3", "a1"), ("a4", "a1"), ("a4", "a5"), ("a1", "a5")]
ZIKA_AUTHORS = {"a1": ["au1", "au2"], "a2": ["au2"], "a3": ["au3"], "a4": ["au1"], "a5": ["au3"]}


def citation_triples(edges: Sequence[tuple[str, str]], authors: dict[str, list[str]], ns: str = EX + "zika/") -> list[Triple]:
    """Articles typed as scholarly articles about Zika, with citations and authors."""
    article = IRI(WD + "Q13442814")
    zika = IRI(WD + "Q202864")
    articles = sorted({a for e in edges for a in e} | set(authors))
    triples: list[Triple] = []
    for a in articles:
        triples.append((IRI(ns + a), IRI(WDT + "P31"), article))
        triples.append((IRI(ns + a), IRI(WDT + "P921"), zika))
    for u, v in edges:
        triples.append((IRI(ns + u), IRI(WDT + "P2860"), IRI(ns + v)))
    for a, people in sorted(authors.items()):
        for person in people:
            triples.append((IRI(ns + a), IRI(WDT + "P50"), IRI(ns + person)))
    return triples


# -- metro-like network ------------------------------------------------------

METRO_NS = EX + "metro/"
ADJACENT = IRI(WDT + "P197")
ON_LINE = IRI(WDT + "P81")


def metro_triples() -> tuple[list[Triple], dict]:
    """Ten lines, 93 stations, 86 adjacent pairs stored in both directions.

    Three stations are shared by two lines. Line L2 plays the closed line.
    """
    lengths = [14, 13, 12, 11, 10, 9, 8, 7, 7, 5]
    # (line, index) -> (line, index) it coincides with
    shared = {(1, 4): (0, 6), (2, 2): (1, 8), (3, 5): (0, 1)}
    station_of: dict[tuple[int, int], int] = {}
    count = 0
    for line, length in enumerate(lengths):
        for i in range(length):
            if (line, i) in shared:
                station_of[(line, i)] = station_of[shared[(line, i)]]
            else:
                station_of[(line, i)] = count
                count += 1
    station = lambda k: IRI(f"{METRO_NS}s{k:02d}")  # noqa: E731
    triples: set[Triple] = set()
    for line, length in enumerate(lengths):
        line_iri = IRI(f"{METRO_NS}L{line}")
        for i in range(length):
            triples.add((station(station_of[(line, i)]), ON_LINE, line_iri))
            if i + 1 < length:
                a, b = station(station_of[(line, i)]), station(station_of[(line, i + 1)])
                triples.add((a, ADJACENT, b))
                triples.add((b, ADJACENT, a))
    info = {
        "source": station(station_of[(0, 0)]).value,
        "excluded_line": f"{METRO_NS}L2",
        "stations": count,
    }
    return sorted(triples, key=lambda t: (t[0].value, t[1].value, str(t[2]))), info


# -- desk-scale benchmark graphs ------------------------------------------------

def _citations(rng: random.Random, n: int, m: int) -> list[Edge]:
    edges: set[Edge] = set()
    while len(edges) < m:
        u = rng.randrange(1, n)
        v = rng.randrange(0, u)  # cite something older
        edges.add((u, v))
    return sorted(edges)


def _bipartite(rng: random.Random, left: int, right: int, m: int, skew: float = 1.2) -> list[Edge]:
    weights = [1 / (k + 1) ** skew for k in range(right)]
    edges: set[Edge] = set()
    for u in range(left):  # every node gets at least one edge
        edges.add((u, left + rng.choices(range(right), weights)[0]))
    for v in range(right):
        edges.add((rng.randrange(left), left + v))
    while len(edges) < m:
        edges.add((rng.randrange(left), left + rng.choices(range(right), weights)[0]))
    return sorted(edges)


def _forest(rng: random.Random, n: int, m: int) -> list[Edge]:
    # m edges on n nodes without cycles: n - m trees
    roots = n - m
    # the first child of each root is fixed so that no node is isolated
    return sorted((c, c - roots if c < 2 * roots else rng.randrange(0, c)) for c in range(roots, n))


def _lineage(rng: random.Random, n: int, m: int, founders: int) -> list[Edge]:
    edges: set[Edge] = set()
    for child in range(founders, n):
        edges.add((child, child - founders if child < 2 * founders else rng.randrange(0, child)))
    while len(edges) < m:
        child = rng.randrange(founders, n)
        edges.add((child, rng.randrange(0, child)))
    return sorted(edges)


BENCH_GRAPHS = {
    # name: (description, generator)
    "q1-metro": "adjacent metro stations (symmetric, 93 nodes / 172 edges)",
    "q2-citations": "article citations (DAG, scaled to 300 nodes / 1500 edges)",
    "q3-groups": "characters and groups (bipartite, 480 nodes / 766 edges)",
    "q4-cartridges": "cartridges and their bases (forest, 266 nodes / 211 edges)",
    "q5-lineage": "horse lineage (DAG, scaled to 450 nodes / 545 edges)",
    "q6-treatments": "drug-disease links (bipartite, scaled to 400 nodes / 635 edges)",
}


def bench_graph(name: str, seed: int = 7) -> tuple[list[Triple], str]:
    """Triples and edge predicate IRI for one benchmark graph."""
    rng = random.Random(f"{name}:{seed}")
    if name == "q1-metro":
        triples, _ = metro_triples()
        return triples, ADJACENT.value
    edges = {
        "q2-citations": lambda: _citations(rng, 300, 1500),
        "q3-groups": lambda: _bipartite(rng, 400, 80, 766),
        "q4-cartridges": lambda: _forest(rng, 266, 211),
        "q5-lineage": lambda: _lineage(rng, 450, 545, 40),
        "q6-treatments": lambda: _bipartite(rng, 250, 150, 635, skew=0.8),
    }[name]()
    predicate = IRI(f"{EX}{name}/edge")
    return edge_triples(edges, predicate, ns=f"{EX}{name}/"), predicate.value


def graph_stats(triples: Iterable[Triple], predicate: str) -> tuple[int, int, str]:
    """Node count, edge count and the node with the most out-edges."""
    out: dict[str, int] = {}
    nodes: set[str] = set()
    edges = 0
    for s, p, o in triples:
        if p.value != predicate:
            continue
        edges += 1
        nodes.update((s.value, o.value))
        out[s.value] = out.get(s.value, 0) + 1
    hub = min(out, key=lambda k: (-out[k], k)) if out else ""
    return len(nodes), edges, hub


def fixtures_dir() -> Path:
    return Path(str(resources.files(__package__).joinpath("fixtures")))


def fixture_path(name: str) -> Path:
    return fixtures_dir() / name


def write_fixtures(directory: Path | None = None) -> None:
    """Regenerate every bundled fixture file and the benchmark manifest."""
    directory = Path(directory or fixtures_dir())
    (directory / "bench").mkdir(parents=True, exist_ok=True)
    (directory / "zika.nt").write_text(to_ntriples(citation_triples(ZIKA_EDGES, ZIKA_AUTHORS)))
    metro, _ = metro_triples()
    (directory / "metro.nt").write_text(to_ntriples(metro))
    datasets = []
    for name in BENCH_GRAPHS:
        triples, predicate = bench_graph(name)
        (directory / "bench" / f"{name}.nt").write_text(to_ntriples(triples))
        nodes, edges, hub = graph_stats(triples, predicate)
        datasets.append({
            "name": name,
            "path": f"bench/{name}.nt",
            "edge": predicate,
            "source": hub,
            "nodes": nodes,
            "edges": edges,
        })
    manifest = {
        "datasets": datasets,
        "algorithms": ["BFS", "LCC", "PR", "SSSP", "WCC"],
        "strategy": "in-memory",
        "timeout": 120,
    }
    (directory / "bench.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    write_fixtures()
