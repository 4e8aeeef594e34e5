import json
import random
from decimal import Decimal

import networkx as nx
import pytest
from conftest import EDGE_TEXT, ZIKA, as_float, graph, index_of, iri, random_edges
from frozen import CITATIONS, RANK_STEP_10
from oracles import bfs_depths, components, label_propagation, local_clustering, pagerank_iterations

from sparqal.errors import MissingParameter, UnknownProcedure
from sparqal.interpreter import run_source
from sparqal.parser import parse_procedure, validate_procedure
from sparqal.solutions import IRI, Literal
from sparqal.solutions.terms import XSD_DECIMAL
from sparqal.stdlib import format_iri, get_procedure, list_procedures, parameters
from sparqal.stdlib.graphs import (
    BENCH_GRAPHS,
    bench_graph,
    fixture_path,
    graph_stats,
    metro_triples,
    to_ntriples,
)

EXPECTED = {"metro-reachability", "zika-pindex", "BFS", "SSSP", "PR", "WCC", "LCC", "CDLP", "WL"}


def run(name, ds, **params):
    params.setdefault("edge", EDGE_TEXT)
    result, _ = run_source(get_procedure(name, params), ds)
    return result


def by_node(result, var, node_var="node", convert=as_float):
    return {index_of(m[node_var]): convert(m[var]) for m in result.mappings()}


# -- templates -------------------------------------------------------------------------


def test_catalogue():
    assert set(list_procedures()) == EXPECTED


def test_unknown_procedure():
    with pytest.raises(UnknownProcedure):
        get_procedure("DIJKSTRA", {})


def test_missing_parameter():
    with pytest.raises(MissingParameter):
        get_procedure("BFS", {"edge": EDGE_TEXT})


def test_unknown_parameter():
    with pytest.raises(ValueError):
        get_procedure("WCC", {"edge": EDGE_TEXT, "colour": "red"})


def test_names_are_case_insensitive():
    assert get_procedure("pr", {"edge": EDGE_TEXT}) == get_procedure("PR", {"edge": EDGE_TEXT})


def test_pagerank_defaults():
    assert parameters("PR")["iterations"]["default"] == 10
    assert parameters("PR")["damping"]["default"] == "0.85"
    assert "WHILE (TIMES 10)" in get_procedure("PR", {"edge": EDGE_TEXT})


@pytest.mark.parametrize(
    "value, text",
    [
        ("wdt:P197", "wdt:P197"),
        ("http://example.org/p", "<http://example.org/p>"),
        ("<http://example.org/p>", "<http://example.org/p>"),
        ("wdt:P22|wdt:P25", "wdt:P22|wdt:P25"),
    ],
)
def test_format_iri(value, text):
    assert format_iri(value) == text


def test_format_iri_rejects_junk():
    with pytest.raises(ValueError):
        format_iri("not an iri")


@pytest.mark.parametrize("bad", ["0", "-2", "ten"])
def test_iteration_count_must_be_positive(bad):
    with pytest.raises(ValueError):
        get_procedure("PR", {"edge": EDGE_TEXT, "iterations": bad})


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_rendered_templates_validate(name):
    params = {k: v for k, v in {"edge": EDGE_TEXT, "source": f"<{iri(0)}>"}.items() if k in parameters(name)}
    assert validate_procedure(parse_procedure(get_procedure(name, params))).ok


# -- algorithms ------------------------------------------------------------------------------


def test_pagerank_on_citations(zika_ds):
    result = run("PR", zika_ds, edge="wdt:P2860")
    got = {m["node"].value[len(ZIKA):]: as_float(m["rank"]) for m in result.mappings()}
    oracle = pagerank_iterations(CITATIONS)[-1]
    assert got == pytest.approx(oracle, abs=1e-9)
    assert oracle == pytest.approx(RANK_STEP_10, abs=1e-15)


@pytest.mark.parametrize("bad", ["1.5", "-0.1", "x", "NaN"])
def test_damping_must_be_a_fraction(bad):
    with pytest.raises(ValueError):
        get_procedure("PR", {"edge": EDGE_TEXT, "damping": bad})


def test_damping_rendered_as_integer_ratio():
    text = get_procedure("PR", {"edge": EDGE_TEXT})
    assert "(?rank * 17) / (?degree * 20)" in text


def test_pagerank_batched_is_bit_identical(zika_ds):
    from sparqal.interpreter import RunConfig, Strategy
    from sparqal.solutions import sequences_equal_as_multisets

    src = get_procedure("PR", {"edge": "wdt:P2860"})
    plain, _ = run_source(src, zika_ds)
    batched, _ = run_source(src, zika_ds, RunConfig(strategy=Strategy.BATCHED, batch_width=1, parallelism=3))
    assert sequences_equal_as_multisets(plain, batched)


def test_pagerank_custom_damping():
    edges = [(0, 1), (1, 2), (2, 0), (2, 3)]
    got = by_node(run("PR", graph(edges), iterations=5, damping="0.5"), "rank")
    assert got == pytest.approx(pagerank_iterations(edges, 5, 0.5)[-1], abs=1e-9)


def test_bfs_on_path():
    got = by_node(run("BFS", graph([(0, 1), (1, 2)]), source=f"<{iri(0)}>"), "depth", convert=lambda t: int(t.lexical))
    assert got == {0: 0, 1: 1, 2: 2}


@pytest.mark.parametrize("seed", range(5))
def test_bfs_random(seed):
    edges = random_edges(random.Random(seed), 25, 0.08, self_loops=True)
    got = by_node(run("BFS", graph(edges), source=f"<{iri(0)}>"), "depth", convert=lambda t: int(t.lexical))
    assert got == bfs_depths(edges, 0)


def test_wcc_two_triangles():
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    got = by_node(run("WCC", graph(edges)), "component", convert=index_of)
    assert len(set(got.values())) == 2
    assert got == components(edges)


@pytest.mark.parametrize("seed", range(5))
def test_wcc_random(seed):
    edges = random_edges(random.Random(seed), 30, 0.04)
    assert by_node(run("WCC", graph(edges)), "component", convert=index_of) == components(edges)


@pytest.mark.parametrize("seed", range(5))
def test_sssp_unit_weights(seed):
    edges = random_edges(random.Random(seed), 20, 0.1)
    got = by_node(run("SSSP", graph(edges), source=f"<{iri(0)}>"), "dist", convert=lambda t: Decimal(t.lexical))
    g = nx.DiGraph(edges)
    g.add_node(0)
    assert got == {k: Decimal(v) for k, v in nx.single_source_shortest_path_length(g, 0).items()}


@pytest.mark.parametrize("seed", range(4))
def test_sssp_weighted(seed):
    rng = random.Random(seed)
    edges = random_edges(rng, 15, 0.15)
    weights = {e: Decimal(rng.choice(["0.5", "1", "2.25", "3"])) for e in edges}
    weight = IRI("http://example.org/weight")
    rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
    extra = []
    for k, (u, v) in enumerate(edges):
        st = IRI(f"http://example.org/stmt/{k}")
        extra += [
            (st, IRI(rdf + "subject"), IRI(iri(u))),
            (st, IRI(rdf + "predicate"), IRI("http://example.org/edge")),
            (st, IRI(rdf + "object"), IRI(iri(v))),
            (st, weight, Literal(str(weights[(u, v)]), XSD_DECIMAL)),
        ]
    result = run("SSSP", graph(edges, extra), source=f"<{iri(0)}>", weight=f"<{weight.value}>")
    got = by_node(result, "dist", convert=lambda t: Decimal(t.lexical))
    g = nx.DiGraph()
    g.add_node(0)
    g.add_weighted_edges_from((u, v, weights[(u, v)]) for u, v in edges)
    assert got == nx.single_source_dijkstra_path_length(g, 0)


@pytest.mark.parametrize("seed", range(5))
def test_lcc_random(seed):
    edges = random_edges(random.Random(seed), 15, 0.25, self_loops=True)
    got = by_node(run("LCC", graph(edges)), "lcc")
    assert got == pytest.approx(local_clustering(edges), abs=1e-12)


def test_lcc_triangle_and_tail():
    edges = [(0, 1), (1, 2), (2, 0), (2, 3)]
    assert by_node(run("LCC", graph(edges)), "lcc") == pytest.approx({0: 0.5, 1: 0.5, 2: 1 / 6, 3: 0.0})


@pytest.mark.parametrize("seed", range(5))
def test_cdlp_random(seed):
    edges = random_edges(random.Random(seed), 20, 0.12, self_loops=True)
    got = by_node(run("CDLP", graph(edges), iterations=4), "label", convert=index_of)
    assert got == label_propagation(edges, 4)


def test_metro_reachability_excludes_closed_line(metro_ds):
    ns = "http://example.org/metro/"
    src = get_procedure("metro-reachability", {"source": f"<{ns}s01>", "excluded_line": f"<{ns}L2>"})
    result, _ = run_source(src, metro_ds)
    got = {m["s"].value for m in result.mappings()}
    closed = {s.value for (s,) in metro_ds.select(f"SELECT ?s WHERE {{ ?s wdt:P81 <{ns}L2> }}").rows()}
    assert got and not (got & closed)


# -- fixtures -----------------------------------------------------------------------------


def test_metro_fixture_shape():
    triples, info = metro_triples()
    nodes, edges, _ = graph_stats(triples, "http://www.wikidata.org/prop/direct/P197")
    assert (nodes, edges) == (93, 172) and info["stations"] == 93
    assert fixture_path("metro.nt").read_text() == to_ntriples(triples)


def test_bench_fixtures_are_current():
    manifest = json.loads(fixture_path("bench.json").read_text())
    assert [d["name"] for d in manifest["datasets"]] == list(BENCH_GRAPHS)
    assert manifest["algorithms"] == ["BFS", "LCC", "PR", "SSSP", "WCC"]
    for entry in manifest["datasets"]:
        triples, predicate = bench_graph(entry["name"])
        assert predicate == entry["edge"]
        nodes, edges, hub = graph_stats(triples, predicate)
        assert (nodes, edges, hub) == (entry["nodes"], entry["edges"], entry["source"])
        assert nodes <= 500
        assert fixture_path(entry["path"]).read_text() == to_ntriples(triples)


def test_bench_shapes():
    def graph_of(name):
        triples, predicate = bench_graph(name)
        return nx.DiGraph((s.value, o.value) for s, p, o in triples if p.value == predicate)

    assert nx.is_directed_acyclic_graph(graph_of("q2-citations"))
    assert nx.is_forest(graph_of("q4-cartridges").to_undirected())
    assert nx.is_directed_acyclic_graph(graph_of("q5-lineage"))
    for name in ("q3-groups", "q6-treatments"):
        assert nx.is_bipartite(graph_of(name).to_undirected())
