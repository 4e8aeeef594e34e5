"""Map/Reduce evaluation of QVALUES-bearing queries.

A query Q over sequences r_1..r_k is split on a variable ?v. For each key
c in QDom (every value bound to ?v in some r_i) a batch query Q_c is built
by restricting each r_i:

1. if r_i binds ?v, keep the mappings with ?v = c;
2. else if r_i binds the variable ?u projected by a selector I_j, keep the
   mappings whose ?u lies in the results of I_j with ?v replaced by c;
3. else keep r_i unchanged.

Keys are grouped ``batch_width`` at a time so one physical query serves
several keys. Results are merged with a multiset UNION. This is only
equivalent to unbatched evaluation for queries that decompose per key
(for instance ``GROUP BY ?v``); nothing checks that statically.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

from .errors import BatchError, QueryError, QueryTimeout, RunTimeout, UnassignedVariable
from .parser import MapSpec, QueryTemplate, ReduceSpec, ReduceStrategy
from .parser.lexical import projected_variables, substitute_variable
from .solutions import Environment, RdfTerm, SolutionSequence, concat, sort_key, term_to_sparql


def compute_qdom(env: Environment, qvalues_vars: Iterable[str], split_var: str) -> set[RdfTerm]:
    """Union of all terms bound to ``split_var`` in the referenced sequences."""
    domain: set[RdfTerm] = set()
    for name in dict.fromkeys(qvalues_vars):
        seq = env[name]
        if split_var in seq.variables:
            domain.update(t for t in seq.column(split_var) if t is not None)
    return domain


class _SelectorCache:
    """Selector results keyed by (selector text, key), shared by a run."""

    def __init__(self):
        self._data: dict[tuple[str, RdfTerm], frozenset] = {}
        self._lock = threading.Lock()

    def get(self, selector: str, key: RdfTerm, evaluate) -> frozenset:
        with self._lock:
            hit = self._data.get((selector, key))
        if hit is not None:
            return hit
        value = evaluate()
        with self._lock:
            self._data[(selector, key)] = value
        return value


class _Planner:
    def __init__(self, names: Iterable[str], env: Environment, spec: MapSpec, select, cache: _SelectorCache, spill_threshold):
        self.env = env
        self.spec = spec
        self.select = select
        self.cache = cache
        self.spill = spill_threshold
        self.selector_vars = [projected_variables(sel)[0] for sel in spec.selectors]
        # which rule applies to each referenced sequence
        self.rules: dict[str, tuple[str, int | None]] = {}
        for name in dict.fromkeys(names):
            seq = env[name]
            if seq.binds(spec.split_var):
                self.rules[name] = ("split", None)
                continue
            for j, var in enumerate(self.selector_vars):
                if seq.binds(var):
                    self.rules[name] = ("selector", j)
                    break
            else:
                self.rules[name] = ("keep", None)

    def selector_values(self, j: int, key: RdfTerm) -> frozenset:
        selector = self.spec.selectors[j]
        var = self.selector_vars[j]

        def evaluate():
            text = substitute_variable(selector, self.spec.split_var, term_to_sparql(key))
            return frozenset(t for t in self.select(text).column(var) if t is not None)

        return self.cache.get(selector, key, evaluate)

    def batch_env(self, keys: list[RdfTerm]) -> Environment:
        keyset = set(keys)
        out = Environment()
        for name, (rule, j) in self.rules.items():
            seq = self.env[name]
            if rule == "split":
                idx = seq.variables.index(self.spec.split_var)
                out.assign(name, seq.filter(lambda row: row[idx] in keyset, self.spill))
            elif rule == "selector":
                allowed = set()
                for key in keys:
                    allowed |= self.selector_values(j, key)
                idx = seq.variables.index(self.selector_vars[j])
                out.assign(name, seq.filter(lambda row: row[idx] in allowed, self.spill))
            else:
                out.assign(name, seq)
        return out


def build_batch_env(env: Environment, key: RdfTerm, spec: MapSpec, ds, qvalues_vars: Iterable[str] | None = None) -> Environment:
    """Batch environment r_{i,c} for a single key ``c``.

    ``qvalues_vars`` defaults to every variable in ``env``.
    """
    names = list(qvalues_vars) if qvalues_vars is not None else env.names()
    planner = _Planner(names, env, spec, ds.select, _SelectorCache(), ds.spill_threshold)
    return planner.batch_env([key])


def eval_batched(
    tpl: QueryTemplate,
    env: Environment,
    map_spec: MapSpec,
    reduce_spec: ReduceSpec | None,
    ds,
    cfg,
    record=None,
    run=None,
) -> SolutionSequence:
    """Evaluate ``tpl`` in batches and merge the results."""
    from .interpreter import instantiate_query

    strategy = (reduce_spec or ReduceSpec()).strategy
    if strategy is not ReduceStrategy.UNION:
        raise BatchError(f"reduce strategy {strategy.value} is not implemented")
    if run is not None:
        select = run.select
        if run.selector_cache is None:
            run.selector_cache = _SelectorCache()
        cache = run.selector_cache
    else:
        def select(text):
            return ds.select(text, cfg.per_query_timeout)
        cache = _SelectorCache()

    qdom = sorted(compute_qdom(env, tpl.variables, map_spec.split_var), key=sort_key)
    if not qdom:
        empty = Environment({n: SolutionSequence.empty(env[n].variables) for n in tpl.variables})
        variables = select(instantiate_query(tpl, empty)).variables
        if record is not None:
            record.batches = 0
        return SolutionSequence.empty(variables)

    planner = _Planner(tpl.variables, env, map_spec, select, cache, ds.spill_threshold)
    width = cfg.batch_width
    groups = [qdom[i : i + width] for i in range(0, len(qdom), width)]

    def evaluate(keys: list[RdfTerm]):
        if run is not None:
            run.check_deadline()
        try:
            text = instantiate_query(tpl, planner.batch_env(keys))
            return len(text.encode("utf-8")), select(text)
        except (QueryTimeout, RunTimeout, UnassignedVariable):
            raise
        except QueryError as exc:
            raise BatchError(str(exc), key=term_to_sparql(keys[0])) from exc

    if cfg.parallelism > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            outcomes = list(pool.map(evaluate, groups))
    else:
        outcomes = [evaluate(g) for g in groups]

    if record is not None:
        record.batches = len(groups)
        record.max_batch_query_bytes = max(size for size, _ in outcomes)
    parts = [seq for _, seq in outcomes]
    return concat(parts[0].variables, parts, ds.spill_threshold)


__all__ = ["build_batch_env", "compute_qdom", "eval_batched"]
