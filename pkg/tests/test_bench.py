import json

import pytest

from sparqal.bench import BenchReport, BenchRow, load_manifest, run_bench
from sparqal.stdlib.graphs import fixture_path


def test_tiny_timeout_marks_rows_and_finishes():
    report = run_bench(timeout=0.001, datasets=["q2-citations", "q3-groups"])
    assert len(report.rows) == 10
    assert {r.outcome for r in report.rows} == {"timeout"}


def test_totals_are_sum_of_tasks():
    report = run_bench(datasets=["q4-cartridges"])
    assert len(report.rows) == 5 and all(r.outcome == "ok" for r in report.rows)
    assert report.total_seconds == pytest.approx(sum(r.seconds for r in report.rows), abs=1e-9)
    doc = report.to_json()
    assert doc["outcomes"] == {"ok": 5}
    assert json.loads(json.dumps(doc))["total_seconds"] == pytest.approx(report.total_seconds)


def test_rows_record_peak_rows_and_strategy():
    report = run_bench(datasets=["q1-metro"], algorithms=["PR"], strategy="batched", batch_width=8)
    (row,) = report.rows
    assert row.task == "q1-metro/PR" and row.strategy == "batched" and row.peak_rows >= 172


def test_table_lists_every_task():
    report = BenchReport([BenchRow("a/BFS", "a", "BFS", 0.5, 3, "in-memory", "ok")])
    assert "a/BFS" in report.table() and "total" in report.table()


def test_manifest_must_list_datasets(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"algorithms": []}))
    with pytest.raises(ValueError):
        load_manifest(path)


def test_custom_manifest(tmp_path):
    (tmp_path / "g.nt").write_text(fixture_path("bench/q4-cartridges.nt").read_text())
    manifest = {
        "datasets": [{"name": "g", "path": "g.nt", "edge": "http://example.org/q4-cartridges/edge",
                      "source": "http://example.org/q4-cartridges/n055",
                      "params": {"PR": {"iterations": 2}}}],
        "algorithms": ["PR", "SSSP"],
    }
    (tmp_path / "m.json").write_text(json.dumps(manifest))
    report = run_bench(tmp_path / "m.json")
    assert [r.task for r in report.rows] == ["g/PR", "g/SSSP"]
    assert all(r.outcome == "ok" for r in report.rows)
