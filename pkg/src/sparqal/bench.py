"""Benchmark suite: every (graph, algorithm) pair of a manifest, timed."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .backend import load_dataset
from .errors import LoopGuardExceeded, QueryTimeout, RunTimeout, SparqalError, StatementError
from .interpreter import RunConfig, Strategy, run_source
from .stdlib import get_procedure
from .stdlib.graphs import fixture_path

OK, TIMEOUT, FALLBACK, ERROR = "ok", "timeout", "memory-fallback", "error"

# Algorithms that start from a node take the dataset's "source".
_NEEDS_SOURCE = {"BFS", "SSSP"}


@dataclass
class BenchRow:
    task: str
    dataset: str
    algorithm: str
    seconds: float
    peak_rows: int
    strategy: str
    outcome: str
    result_rows: int | None = None
    detail: str = ""


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def total_seconds(self) -> float:
        return sum(r.seconds for r in self.rows)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.rows:
            out[r.outcome] = out.get(r.outcome, 0) + 1
        return out

    def to_json(self) -> dict:
        return {
            "rows": [asdict(r) for r in self.rows],
            "total_seconds": self.total_seconds,
            "outcomes": self.counts(),
        }

    def table(self) -> str:
        header = f"{'task':<28} {'seconds':>9} {'peak rows':>10} {'strategy':<10} outcome"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            lines.append(
                f"{r.task:<28} {r.seconds:>9.3f} {r.peak_rows:>10} {r.strategy:<10} {r.outcome}"
            )
        lines.append(f"{'total':<28} {self.total_seconds:>9.3f}")
        return "\n".join(lines)


def default_manifest_path() -> Path:
    return fixture_path("bench.json")


def load_manifest(path: str | Path | None = None) -> tuple[dict, Path]:
    path = Path(path) if path is not None else default_manifest_path()
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    for key in ("datasets", "algorithms"):
        if key not in manifest:
            raise ValueError(f"benchmark manifest {path} lacks {key!r}")
    return manifest, path.parent


def _params(entry: dict, algorithm: str) -> dict:
    params = {"edge": f"<{entry['edge']}>"}
    if algorithm in _NEEDS_SOURCE:
        params["source"] = f"<{entry['source']}>"
    params.update(entry.get("params", {}).get(algorithm, {}))
    return params


def run_task(ds, entry: dict, algorithm: str, cfg: RunConfig) -> BenchRow:
    task = f"{entry['name']}/{algorithm}"
    source = get_procedure(algorithm, _params(entry, algorithm))
    t0 = time.perf_counter()
    trace = None
    result_rows = None
    detail = ""
    try:
        result, trace = run_source(source, ds, cfg)
        result_rows = len(result)
        outcome = FALLBACK if any(s.fallback for s in trace.statements) else OK
    except RunTimeout as exc:
        trace, outcome = exc.trace, TIMEOUT
    except StatementError as exc:
        trace = exc.trace
        outcome = TIMEOUT if isinstance(exc.cause, QueryTimeout) else ERROR
        detail = str(exc)
    except (LoopGuardExceeded, SparqalError) as exc:
        trace, outcome, detail = getattr(exc, "trace", None), ERROR, str(exc)
    seconds = time.perf_counter() - t0
    return BenchRow(
        task=task,
        dataset=entry["name"],
        algorithm=algorithm,
        seconds=seconds,
        peak_rows=trace.peak_rows if trace is not None else 0,
        strategy=cfg.strategy.value,
        outcome=outcome,
        result_rows=result_rows,
        detail=detail,
    )


def run_bench(
    manifest_path: str | Path | None = None,
    strategy: str | None = None,
    timeout: float | None = None,
    datasets: list[str] | None = None,
    algorithms: list[str] | None = None,
    **cfg_options,
) -> BenchReport:
    """Run the suite. A task that times out is recorded and the suite moves on."""
    manifest, base = load_manifest(manifest_path)
    strategy = Strategy(strategy or manifest.get("strategy", "in-memory"))
    timeout = timeout if timeout is not None else manifest.get("timeout")
    report = BenchReport()
    for entry in manifest["datasets"]:
        if datasets and entry["name"] not in datasets:
            continue
        ds = load_dataset([base / entry["path"]])
        for algorithm in manifest["algorithms"]:
            if algorithms and algorithm not in algorithms:
                continue
            cfg = RunConfig(strategy=strategy, deadline=timeout, **cfg_options)
            report.rows.append(run_task(ds, entry, algorithm, cfg))
    return report
