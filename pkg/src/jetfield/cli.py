"""Command-line runner: ``jetfield run <config>``, ``jetfield suites``, ``jetfield schema``.

Exit status is 0 when every selected suite passes, 1 when any check fails
and 2 when the configuration is invalid (nothing is run in that case).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from contextlib import nullcontext
from pathlib import Path

from threadpoolctl import threadpool_info, threadpool_limits

from .config import SUITES, ConfigError, load_config, schema_json
from .suites import SUITE_HELP, Context, SuiteResult, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
CSV_COLUMNS = ("suite", "N", "max_abs", "l2", "slope", "pass", "check")


def build_report(cfg, results: list[SuiteResult], timings: dict | None = None) -> dict:
    report = {
        "config": cfg.model_dump(mode="json"),
        "passed": all(r.passed for r in results),
        "suites": [r.as_dict() for r in results],
    }
    if timings is not None:
        for entry in report["suites"]:
            entry["wall_time_s"] = round(timings[entry["name"]], 3)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def csv_rows(results: list[SuiteResult]):
    """One row per grid size per check; bound checks give a single row."""

    def fmt(x):
        return "" if x is None else repr(float(x))

    for r in results:
        for c in r.checks:
            verdict = "" if c.passed is None else str(c.passed).lower()
            if c.kind == "slope":
                for n, e, q in zip(c.grids, c.errors, c.l2s):
                    yield (r.name, str(n), fmt(e), fmt(q), fmt(c.value), verdict, c.name)
            else:
                yield (r.name, c.N, fmt(c.value), fmt(c.l2), "", verdict, c.name)


def write_csv(path: Path, results: list[SuiteResult]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(csv_rows(results))


def _thread_limit():
    raw = os.environ.get("JETFIELD_THREADS")
    if not raw:
        return nullcontext()
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"JETFIELD_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"JETFIELD_THREADS must be a positive integer, got {raw!r}")
    # a cap only: raising OpenBLAS above its start-up thread count can crash it
    current = [lib["num_threads"] for lib in threadpool_info()]
    return threadpool_limits(limits=min([n, *current]))


def _summary_line(c) -> str:
    mark = {True: "PASS", False: "FAIL", None: "info"}[c.passed]
    if c.kind == "slope":
        return f"  [{mark}] {c.name}: slope {c.value:.3f} (target {c.target:g} +/- {c.tolerance:g}, grids {c.grids})"
    if c.kind == "bound":
        return f"  [{mark}] {c.name}: {c.value:.3e} <= {c.tolerance:.1e}"
    return f"  [{mark}] {c.name}: {c.value:.3e}"


def cmd_run(args) -> int:
    overrides = {}
    if args.grid is not None:
        overrides["grid_N"] = [args.grid]
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.scheme is not None:
        overrides["scheme"] = args.scheme
    try:
        cfg = load_config(args.config, overrides)
        limit = _thread_limit()
        ctx = Context(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    results, timings = [], {}
    with limit:
        for name in cfg.suites:
            t0 = time.perf_counter()
            res = run_suite(name, ctx)
            timings[name] = time.perf_counter() - t0
            results.append(res)
            if not args.quiet:
                print(f"{name}: {'PASS' if res.passed else 'FAIL'} ({timings[name]:.1f} s)")
                for c in res.checks:
                    print(_summary_line(c))

    report = build_report(cfg, results, timings if args.timings else None)
    if args.out:
        Path(args.out).write_text(report_json(report))
    if args.csv:
        write_csv(Path(args.csv), results)
    ok = report["passed"]
    if not args.quiet:
        print("all suites passed" if ok else "FAILED: " + ", ".join(r.name for r in results if not r.passed))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_suites(args) -> int:
    for name in SUITES:
        print(f"{name:14s} {SUITE_HELP[name]}")
    return EXIT_PASS


def cmd_schema(args) -> int:
    print(schema_json())
    return EXIT_PASS


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jetfield", description="Yang-Mills multisymplectic verification suites on a periodic lattice.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the suites selected in a TOML or JSON config")
    run.add_argument("config")
    run.add_argument("--grid", type=int, metavar="N", help="nodes per axis, overrides grid.N")
    run.add_argument("--seed", type=int, metavar="S", help="global seed")
    run.add_argument("--scheme", choices=("order2", "order4"))
    run.add_argument("--out", metavar="REPORT.json", help="write the JSON report")
    run.add_argument("--csv", metavar="TABLES.csv", help="write the CSV table")
    run.add_argument("--timings", action="store_true", help="add wall times to the JSON report (breaks byte-identity)")
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(func=cmd_run)

    sub.add_parser("suites", help="list the available suites").set_defaults(func=cmd_suites)
    sub.add_parser("schema", help="print the config JSON schema").set_defaults(func=cmd_schema)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
