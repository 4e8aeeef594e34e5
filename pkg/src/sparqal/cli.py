"""``sparqal`` command-line front end."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .backend import load_dataset
from .errors import (
    DatasetLoadError,
    LoopGuardExceeded,
    MissingParameter,
    QueryTimeout,
    RunTimeout,
    SparqalError,
    SparqalSyntaxError,
    StatementError,
    UnknownProcedure,
    ValidationFailed,
)
from .interpreter import RunConfig, run_procedure
from .parser import parse_procedure, validate_procedure
from .solutions import write_json, write_tsv
from .stdlib import get_procedure, list_procedures, manifest

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SYNTAX = 3
EXIT_VALIDATION = 4
EXIT_DATASET = 5
EXIT_RUNTIME = 6
EXIT_LOOP_GUARD = 7
EXIT_TIMEOUT = 8

_DURATION = re.compile(r"^\s*([0-9]*\.?[0-9]+)\s*(ms|s|m|h)?\s*$")
_UNITS = {"ms": 0.001, "s": 1.0, "m": 60.0, "h": 3600.0, None: 1.0}


class UsageError(Exception):
    pass


def parse_duration(text: str) -> float:
    """Seconds from ``10s``, ``500ms``, ``2m``, ``1h`` or a bare number."""
    m = _DURATION.match(text)
    if m is None or float(m.group(1)) <= 0:
        raise argparse.ArgumentTypeError(f"invalid duration {text!r} (try 10s, 500ms, 2m)")
    return float(m.group(1)) * _UNITS[m.group(2)]


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _params(pairs: list[str]) -> dict[str, str]:
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


def _source(args) -> tuple[str, str]:
    """Procedure text and a display name from --proc or --stdlib."""
    if args.proc and args.stdlib:
        raise UsageError("give either --proc or --stdlib, not both")
    if args.proc:
        if args.param:
            raise UsageError("--param only applies to --stdlib procedures")
        path = Path(args.proc)
        try:
            return path.read_text(encoding="utf-8"), str(path)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if args.stdlib:
        try:
            return get_procedure(args.stdlib, _params(args.param)), args.stdlib
        except (UnknownProcedure, MissingParameter, ValueError) as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("one of --proc or --stdlib is required")


def _print_violations(report, name: str) -> None:
    for v in report:
        where = f"{v.span.line}:{v.span.column}" if v.span is not None else "?"
        print(f"{name}:{where}: {v.kind}: {v.message}", file=sys.stderr)


def cmd_run(args) -> int:
    text, name = _source(args)
    ast = parse_procedure(text)
    report = validate_procedure(ast)
    if report:
        _print_violations(report, name)
        return EXIT_VALIDATION
    if not args.data:
        raise UsageError("at least one --data file is required")
    ds = load_dataset(args.data)
    cfg = RunConfig(
        strategy=args.strategy,
        max_loop_iterations=None if args.max_iters == 0 else args.max_iters,
        per_query_timeout=args.query_timeout,
        values_byte_limit=args.values_byte_limit,
        batch_width=args.batch_width,
        parallelism=args.parallelism,
        deadline=args.timeout,
    )
    try:
        result, trace = run_procedure(ast, ds, cfg)
    except (StatementError, LoopGuardExceeded, RunTimeout) as exc:
        if args.trace and exc.trace is not None:
            print(exc.trace.summary(), file=sys.stderr)
        raise
    writer = write_json if args.out == "json" else write_tsv
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            writer(result, fh)
    else:
        writer(result, sys.stdout)
    if args.trace:
        print(trace.summary(), file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    text, name = _source(args)
    report = validate_procedure(parse_procedure(text))
    if report:
        _print_violations(report, name)
        return EXIT_VALIDATION
    print(f"{name}: ok")
    return EXIT_OK


def cmd_list(args) -> int:
    for name in list_procedures():
        entry = manifest()[name]
        params = []
        for pname, spec in entry["params"].items():
            params.append(f"{pname}={spec['default']}" if "default" in spec else pname)
        print(f"{name}: {entry['description']}")
        print(f"    params: {', '.join(params)}")
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import run_bench

    try:
        report = run_bench(
            args.manifest,
            strategy=args.strategy,
            timeout=args.timeout,
            datasets=args.dataset or None,
            algorithms=args.algorithm or None,
            batch_width=args.batch_width,
            parallelism=args.parallelism,
        )
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot use benchmark manifest: {exc}") from None
    print(report.table())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparqal", description="Run SPARQAL procedures over RDF data.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("--proc", help="procedure file (.sparqal)")
        p.add_argument("--stdlib", help="bundled procedure name (see `sparqal list`)")
        p.add_argument("--param", action="append", default=[], metavar="K=V", help="stdlib parameter")

    def add_batching(p):
        p.add_argument("--batch-width", type=_positive_int, default=64)
        p.add_argument("--parallelism", type=_positive_int, default=1)

    run = sub.add_parser("run", help="execute a procedure")
    run.add_argument("--data", action="append", default=[], help="RDF file (.nt or .ttl); repeatable")
    add_source(run)
    run.add_argument("--strategy", choices=["in-memory", "batched"], default="in-memory")
    add_batching(run)
    run.add_argument("--max-iters", type=int, default=1_000_000, help="loop guard; 0 disables")
    run.add_argument("--timeout", type=parse_duration, help="budget for the whole run, e.g. 30s")
    run.add_argument("--query-timeout", type=parse_duration, help="budget per query")
    run.add_argument("--values-byte-limit", type=_positive_int,
                     help="batch any statement whose instantiated query is larger")
    run.add_argument("--out", choices=["tsv", "json"], default="tsv")
    run.add_argument("--output", help="write results here instead of standard output")
    run.add_argument("--trace", action="store_true", help="print the run trace to standard error")
    run.set_defaults(func=cmd_run)

    val = sub.add_parser("validate", help="parse and check well-formedness")
    add_source(val)
    val.set_defaults(func=cmd_validate)

    lst = sub.add_parser("list", help="list bundled procedures")
    lst.set_defaults(func=cmd_list)

    bench = sub.add_parser("bench", help="run the benchmark suite")
    bench.add_argument("--manifest", help="benchmark manifest (default: bundled desk-scale suite)")
    bench.add_argument("--strategy", choices=["in-memory", "batched"])
    add_batching(bench)
    bench.add_argument("--timeout", type=parse_duration, help="per-task budget")
    bench.add_argument("--dataset", action="append", default=[], help="only this dataset; repeatable")
    bench.add_argument("--algorithm", action="append", default=[], help="only this algorithm; repeatable")
    bench.add_argument("--report", help="write the JSON report here")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"sparqal: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SparqalSyntaxError as exc:
        print(f"sparqal: syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except ValidationFailed as exc:
        _print_violations(exc.report, "procedure")
        return EXIT_VALIDATION
    except DatasetLoadError as exc:
        print(f"sparqal: dataset error: {exc}", file=sys.stderr)
        return EXIT_DATASET
    except LoopGuardExceeded as exc:
        print(f"sparqal: {exc}", file=sys.stderr)
        return EXIT_LOOP_GUARD
    except RunTimeout as exc:
        print(f"sparqal: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except StatementError as exc:
        print(f"sparqal: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT if isinstance(exc.cause, QueryTimeout) else EXIT_RUNTIME
    except SparqalError as exc:
        print(f"sparqal: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
