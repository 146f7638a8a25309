"""Command line interface: ``equitree color|verify|gen|oracle|bench``."""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import BudgetExceeded, ParseError
from .generator import GenSpec, generate, generate_text
from .graph import parse_edge_list
from .oracle import BUDGET_EXCEEDED, FOUND, oracle_min_k, oracle_solve
from .solve import solve
from .verify import verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_SOLVER_FAILURE = 3
EXIT_NOT_EXIST = 4
EXIT_BUDGET = 5

BENCH_COLUMNS = [
    "n", "m", "d", "delta", "k", "t", "alpha", "beta", "branch", "success",
    "fail_kind", "ms", "max_class", "min_class", "diag_violations",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read_graph(path: str):
    try:
        with open(path, "rb") as fh:
            return parse_edge_list(fh.read())
    except OSError as exc:
        raise UsageError(str(exc))
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}")


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":")) + "\n"


def cmd_color(args) -> int:
    if args.k < 1:
        raise UsageError("k must be >= 1")
    g = _read_graph(args.input)
    if g.n < 1:
        raise UsageError("graph has no vertices")
    res = solve(g, args.k, force_layered=args.force_layered, rebalance=args.rebalance)
    plan = res.plan
    out = {
        "n": g.n,
        "k": args.k,
        "t": plan.t,
        "alpha": plan.alpha,
        "beta": plan.beta,
        "branch": plan.branch.value,
        "color": res.coloring,
        "class_sizes": res.report.sizes if res.report else None,
        "valid": res.valid,
        "spread": res.report.spread if res.report else None,
        "diagnostics": None,
        "error": None,
    }
    if args.diagnostics:
        out["diagnostics"] = (
            res.diagnostics.to_dict() if res.diagnostics else {"violations": 0, "checks": []}
        )
    if res.failure is not None:
        out["error"] = res.failure.to_dict()
        code = EXIT_SOLVER_FAILURE
    elif not res.valid:
        out["error"] = {"kind": "VerificationFailed", "reasons": res.report.reasons}
        code = EXIT_INVALID
    else:
        code = EXIT_OK
    _write(_dumps(out), args.json)
    return code


def _read_coloring(path: str) -> list:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}")
    if isinstance(data, dict):
        data = data.get("color")
    if not isinstance(data, list):
        raise UsageError(f"{path}: expected a JSON list or an object with a 'color' list")
    return data


def cmd_verify(args) -> int:
    if args.k < 1:
        raise UsageError("k must be >= 1")
    g = _read_graph(args.graph)
    coloring = _read_coloring(args.coloring)
    report = verify(g, coloring, args.k)
    _write(_dumps(report.to_dict()), None)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(n=args.n, d=args.d, dmax=args.dmax, seed=args.seed, dist=args.dist)
    except ValueError as exc:
        raise UsageError(str(exc))
    _write(generate_text(spec), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _read_graph(args.graph)
    try:
        if args.min_k:
            k_star, res = oracle_min_k(g, mode=args.mode, node_limit=args.node_limit)
            _write(_dumps({"status": FOUND, "k": k_star, "color": res.coloring}), None)
            return EXIT_OK
        if args.k is None or args.k < 1:
            raise UsageError("k must be >= 1 (or pass --min-k)")
        res = oracle_solve(g, args.k, mode=args.mode, node_limit=args.node_limit)
    except BudgetExceeded as exc:
        _write(_dumps({"status": BUDGET_EXCEEDED, "detail": str(exc)}), None)
        return EXIT_BUDGET
    except ValueError as exc:
        raise UsageError(str(exc))
    _write(_dumps({"status": res.status, "k": args.k, "color": res.coloring, "nodes": res.nodes}), None)
    if res.found:
        return EXIT_OK
    return EXIT_BUDGET if res.status == BUDGET_EXCEEDED else EXIT_NOT_EXIST


def bench_row(point: tuple, force_layered: bool = False, timing: bool = False) -> dict:
    n, d, k, dmax, seed = point
    g = generate(GenSpec(n=n, d=d, dmax=dmax, seed=seed))
    start = time.perf_counter()
    res = solve(g, k, force_layered=force_layered)
    ms = (time.perf_counter() - start) * 1000.0
    plan = res.plan
    sizes = res.report.sizes if res.report else []
    return {
        "n": g.n,
        "m": g.m,
        "d": plan.d,
        "delta": plan.delta,
        "k": k,
        "t": plan.t,
        "alpha": plan.alpha,
        "beta": plan.beta,
        "branch": plan.branch.value,
        "success": str(res.valid).lower(),
        "fail_kind": res.failure.kind if res.failure else "",
        "ms": f"{ms:.1f}" if timing else "",
        "max_class": max(sizes) if sizes else "",
        "min_class": min(sizes) if sizes else "",
        "diag_violations": len(res.diagnostics.violations) if res.diagnostics else 0,
    }


def _bench_worker(job):
    point, force_layered, timing = job
    return bench_row(point, force_layered, timing)


def cmd_bench(args) -> int:
    points = list(itertools.product(args.n, args.d, args.k, args.dmax, args.seeds))
    if not points:
        raise UsageError("empty grid")
    for n, d, k, dmax, _ in points:
        if n < 1 or d < 0 or k < 1 or dmax < d:
            raise UsageError(f"bad grid point n={n} d={d} k={k} dmax={dmax}")
    jobs = [(p, args.force_layered, args.timing) for p in points]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_worker, jobs))
    else:
        rows = [_bench_worker(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write(buf.getvalue(), args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="equitree", description="Equitable tree-colorings of degenerate graphs.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("color", help="color a graph")
    c.add_argument("input")
    c.add_argument("-k", type=int, required=True)
    c.add_argument("--diagnostics", action="store_true", help="include layer diagnostics")
    c.add_argument("--rebalance", action="store_true", help="try to reach sizes within one")
    c.add_argument("--force-layered", action="store_true")
    c.add_argument("--json", metavar="OUT", help="write JSON here instead of stdout")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring")
    v.add_argument("graph")
    v.add_argument("coloring", help="JSON list, or JSON object with a 'color' list")
    v.add_argument("-k", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="generate a random d-degenerate graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--dmax", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dist", choices=("fixed", "uniform"), default="fixed")
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="exhaustive search on small graphs")
    o.add_argument("graph")
    o.add_argument("-k", type=int)
    o.add_argument("--mode", choices=("cap", "strict"), default="cap")
    o.add_argument("--min-k", action="store_true")
    o.add_argument("--node-limit", type=int, default=2_000_000)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="run the pipeline over a parameter grid")
    b.add_argument("--n", type=_int_list, required=True)
    b.add_argument("--d", type=_int_list, required=True)
    b.add_argument("--k", type=_int_list, required=True)
    b.add_argument("--dmax", type=_int_list, required=True)
    b.add_argument("--seeds", type=_int_list, default=[0])
    b.add_argument("--csv", metavar="OUT")
    b.add_argument("--force-layered", action="store_true")
    b.add_argument("--timing", action="store_true", help="fill the ms column (non-deterministic)")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"equitree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
