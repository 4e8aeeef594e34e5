"""Statement-by-statement execution of procedures."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

from .backend import Dataset
from .errors import (
    BatchError,
    BlankNodeNotRepresentable,
    LoopGuardExceeded,
    QueryError,
    QueryTimeout,
    RunTimeout,
    StatementError,
    UnassignedVariable,
    ValidationFailed,
)
from .parser import (
    Ask,
    Fixpoint,
    Let,
    Loop,
    MapSpec,
    Procedure,
    QueryTemplate,
    ReduceSpec,
    Return,
    Times,
    parse_procedure,
    validate_procedure,
)
from .solutions import Environment, SolutionSequence, sequences_equal_as_sets


class Strategy(enum.Enum):
    IN_MEMORY = "in-memory"
    BATCHED = "batched"


@dataclass
class RunConfig:
    """Knobs for one procedure run.

    ``deadline`` is a wall-clock budget in seconds for the whole run. It is
    checked between statements and also caps each query's timeout.
    """

    strategy: Strategy = Strategy.IN_MEMORY
    max_loop_iterations: int | None = 1_000_000
    per_query_timeout: float | None = None
    values_byte_limit: int | None = None
    batch_width: int = 64
    parallelism: int = 1
    deadline: float | None = None

    def __post_init__(self):
        for name in ("max_loop_iterations", "per_query_timeout", "values_byte_limit", "deadline"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive")
        if self.batch_width < 1 or self.parallelism < 1:
            raise ValueError("batch_width and parallelism must be at least 1")
        if isinstance(self.strategy, str):
            self.strategy = Strategy(self.strategy)


@dataclass
class StatementRecord:
    kind: str  # "let" or "condition"
    line: int | None
    target: str | None
    query_bytes: int = 0
    rows: int = 0
    seconds: float = 0.0
    batched: bool = False
    fallback: bool = False
    batches: int = 0
    max_batch_query_bytes: int = 0


@dataclass
class LoopRecord:
    line: int | None
    iterations: int = 0
    iteration_seconds: list[float] = field(default_factory=list)


@dataclass
class RunTrace:
    statements: list[StatementRecord] = field(default_factory=list)
    loops: list[LoopRecord] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def peak_rows(self) -> int:
        return max((r.rows for r in self.statements), default=0)

    def summary(self) -> str:
        lines = []
        for r in self.statements:
            mode = "batched" if r.batched else "in-memory"
            if r.fallback:
                mode += " (fallback)"
            name = r.target or "condition"
            lines.append(
                f"line {r.line}: {name} rows={r.rows} bytes={r.query_bytes} "
                f"{mode} {r.seconds * 1000:.1f}ms"
            )
        for loop in self.loops:
            lines.append(f"loop at line {loop.line}: {loop.iterations} iterations")
        lines.append(f"total {self.seconds:.3f}s")
        return "\n".join(lines)


def instantiate_query(tpl: QueryTemplate, env: Environment) -> str:
    """Replace each ``QVALUES(v)`` site with a VALUES block for ``env[v]``."""
    if not tpl.sites:
        return tpl.text
    pieces = []
    pos = 0
    for site in tpl.sites:
        pieces.append(tpl.text[pos : site.start])
        pieces.append(env[site.name].values_block())
        pos = site.end
    pieces.append(tpl.text[pos:])
    return "".join(pieces)


def default_map_spec(tpl: QueryTemplate, env: Environment) -> MapSpec | None:
    """Split on the first projected variable of the first QVALUES sequence."""
    for name in tpl.variables:
        seq = env[name]
        if seq.variables:
            return MapSpec(seq.variables[0])
    return None


def _line(stmt) -> int | None:
    return stmt.span.line if stmt.span is not None else None


class _Run:
    def __init__(self, ds: Dataset, cfg: RunConfig):
        self.ds = ds
        self.cfg = cfg
        self.trace = RunTrace()
        self.selector_cache = None  # shared by batched statements of this run
        self.started = time.perf_counter()
        self.expires = None if cfg.deadline is None else self.started + cfg.deadline

    # -- timing ----------------------------------------------------------

    def check_deadline(self):
        if self.expires is not None and time.perf_counter() >= self.expires:
            raise RunTimeout()

    def query_timeout(self) -> tuple[float | None, bool]:
        """Timeout for the next query and whether the run deadline set it."""
        timeout = self.cfg.per_query_timeout
        if self.expires is None:
            return timeout, False
        remaining = max(self.expires - time.perf_counter(), 1e-4)
        if timeout is None or remaining < timeout:
            return remaining, True
        return timeout, False

    def select(self, query: str) -> SolutionSequence:
        timeout, from_deadline = self.query_timeout()
        try:
            return self.ds.select(query, timeout)
        except QueryTimeout:
            if from_deadline:
                raise RunTimeout() from None
            raise

    def ask(self, query: str) -> bool:
        timeout, from_deadline = self.query_timeout()
        try:
            return self.ds.ask(query, timeout)
        except QueryTimeout:
            if from_deadline:
                raise RunTimeout() from None
            raise

    # -- statements ------------------------------------------------------

    def exec_statement(self, stmt, env: Environment) -> Environment:
        self.check_deadline()
        if isinstance(stmt, Let):
            try:
                self.exec_let(stmt, env)
            except (QueryError, BlankNodeNotRepresentable, BatchError, UnassignedVariable) as exc:
                detail = f"batch key {exc.key}" if isinstance(exc, BatchError) and exc.key is not None else ""
                raise StatementError(exc, stmt.span, detail) from exc
            return env
        if isinstance(stmt, Loop):
            return self.exec_loop(stmt, env)
        raise TypeError(f"cannot execute {type(stmt).__name__} here")

    def exec_let(self, stmt: Let, env: Environment) -> None:
        from .batcher import eval_batched

        record = StatementRecord("let", _line(stmt), stmt.target)
        t0 = time.perf_counter()
        map_spec, reduce_spec = stmt.map_spec, stmt.reduce_spec
        batched = (
            self.cfg.strategy is Strategy.BATCHED and map_spec is not None and bool(stmt.query.sites)
        )
        if not batched:
            text = instantiate_query(stmt.query, env)
            size = len(text.encode("utf-8"))
            limit = self.cfg.values_byte_limit
            if limit is not None and size > limit and stmt.query.sites:
                if map_spec is None:
                    map_spec, reduce_spec = default_map_spec(stmt.query, env), ReduceSpec()
                if map_spec is not None:
                    batched = record.fallback = True
            if not batched:
                record.query_bytes = size
                result = self.select(text)
        if batched:
            record.batched = True
            result = eval_batched(stmt.query, env, map_spec, reduce_spec, self.ds, self.cfg, record=record, run=self)
            record.query_bytes = record.max_batch_query_bytes
        record.rows = len(result)
        record.seconds = time.perf_counter() - t0
        self.trace.statements.append(record)
        env.assign(stmt.target, result)

    def evaluate_condition(self, cond, start: Environment, end: Environment, completed: int, span) -> bool:
        if isinstance(cond, Times):
            return completed >= cond.count
        if isinstance(cond, Fixpoint):
            before = start.get(cond.variable)
            after = end[cond.variable]
            if before is None:
                return len(after) == 0
            return sequences_equal_as_sets(before, after)
        assert isinstance(cond, Ask)
        record = StatementRecord("condition", span.line if span else None, None)
        t0 = time.perf_counter()
        try:
            text = instantiate_query(cond.query, end)
            record.query_bytes = len(text.encode("utf-8"))
            answer = self.ask(text)
        except (QueryError, BlankNodeNotRepresentable, UnassignedVariable) as exc:
            raise StatementError(exc, span, "loop condition") from exc
        record.rows = int(answer)
        record.seconds = time.perf_counter() - t0
        self.trace.statements.append(record)
        return answer

    def exec_loop(self, loop: Loop, env: Environment) -> Environment:
        record = LoopRecord(_line(loop))
        self.trace.loops.append(record)
        guard = self.cfg.max_loop_iterations
        watched = loop.condition.variable if isinstance(loop.condition, Fixpoint) else None
        while True:
            t0 = time.perf_counter()
            start = Environment()
            if watched is not None and watched in env:
                start.assign(watched, env[watched])
            for stmt in loop.body:
                env = self.exec_statement(stmt, env)
            record.iterations += 1
            done = self.evaluate_condition(loop.condition, start, env, record.iterations, loop.span)
            record.iteration_seconds.append(time.perf_counter() - t0)
            if done:
                return env
            if guard is not None and record.iterations >= guard:
                raise LoopGuardExceeded(record.iterations, loop.span)


def run_procedure(ast: Procedure, ds: Dataset, cfg: RunConfig | None = None) -> tuple[SolutionSequence, RunTrace]:
    """Execute ``ast`` from an empty environment and return the RETURN value.

    Raises ValidationFailed for ill-formed procedures. Run errors carry
    the partial trace in their ``trace`` attribute.
    """
    report = validate_procedure(ast)
    if report:
        raise ValidationFailed(report)
    run = _Run(ds, cfg or RunConfig())
    env = Environment()
    try:
        for stmt in ast.statements:
            if isinstance(stmt, Return):
                result = env[stmt.variable]
                break
            env = run.exec_statement(stmt, env)
    except (StatementError, LoopGuardExceeded, RunTimeout) as exc:
        run.trace.seconds = time.perf_counter() - run.started
        exc.trace = run.trace
        raise
    run.trace.seconds = time.perf_counter() - run.started
    return result, run.trace


def run_source(text: str, ds: Dataset, cfg: RunConfig | None = None) -> tuple[SolutionSequence, RunTrace]:
    return run_procedure(parse_procedure(text), ds, cfg)


def exec_statement(stmt, env: Environment, ds: Dataset, cfg: RunConfig | None = None) -> Environment:
    """Execute a single LET or loop against ``env`` (mutated and returned)."""
    return _Run(ds, cfg or RunConfig()).exec_statement(stmt, env)


def evaluate_condition(cond, start: Environment, end: Environment, completed: int, ds: Dataset, cfg: RunConfig | None = None) -> bool:
    """True when the loop should stop."""
    return _Run(ds, cfg or RunConfig()).evaluate_condition(cond, start, end, completed, None)


__all__ = [
    "LoopRecord", "RunConfig", "RunTrace", "StatementRecord", "Strategy",
    "default_map_spec", "evaluate_condition", "exec_statement",
    "instantiate_query", "run_procedure", "run_source",
]
