"""Command-line batch runs: canonical numbers, permuted copies, matching, oracle."""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from .canonical import canonical_number
from .graph import (
    EdgeListError,
    Graph,
    Graph6Error,
    apply_permutation,
    emit_edge_list,
    emit_graph6,
    random_permutation,
    read_edge_lists,
    read_graph6_lines,
)
from .nutcracker import DEFAULT_DIGITS, MatchFailure, find_correspondence
from .oracle import OracleSizeError, brute_force_isomorphism
from .precision import classify_pair, resolve_dtype, same_at_digits
from .spectral import MAX_ITER, ConvergenceError, ReducibleMatrixError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class GraphRecord:
    index: int
    canonical: float | None
    seconds: float
    error: str | None = None


@dataclass
class RunReport:
    records: list[GraphRecord]
    digits: int
    suspect_digits: int
    collisions: list[tuple[int, int]] = field(default_factory=list)
    suspects: list[tuple[int, int]] = field(default_factory=list)
    nearest: list[tuple[int, int, float, str]] = field(default_factory=list)
    failures: Counter = field(default_factory=Counter)


def _pairs_within(values: list[tuple[float, int]], digits: int) -> list[tuple[int, int]]:
    """All index pairs whose values agree at ``digits``; ``values`` sorted ascending."""
    out = []
    for k, (a, i) in enumerate(values):
        for b, j in values[k + 1:]:
            if abs(b - a) > 10.0 ** (1 - digits) * max(abs(a), abs(b)):
                break
            if same_at_digits(a, b, digits):
                out.append((min(i, j), max(i, j)))
    return sorted(out)


def _canon_one(g: Graph, dtype, max_iter: int) -> GraphRecord:
    t = time.perf_counter()
    try:
        cn = float(canonical_number(g, max_iter=max_iter, dtype=dtype))
        err = None
    except (ConvergenceError, ReducibleMatrixError, ValueError) as exc:
        cn, err = None, type(exc).__name__
    return GraphRecord(-1, cn, time.perf_counter() - t, err)


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=8))


def run_canon(graphs: list[Graph], digits: int = DEFAULT_DIGITS, suspect_digits: int | None = None,
              nearest: int = 10, dtype=None, max_iter: int = MAX_ITER, jobs: int = 1) -> RunReport:
    records = _map(partial(_canon_one, dtype=resolve_dtype(dtype), max_iter=max_iter), graphs, jobs)
    for k, rec in enumerate(records):
        rec.index = k
    return build_report(records, digits, suspect_digits, nearest)


def build_report(records: list[GraphRecord], digits: int = DEFAULT_DIGITS, suspect_digits: int | None = None,
                 nearest: int = 10) -> RunReport:
    """Collision, precision-suspect and nearest-pair scan over finished records."""
    if suspect_digits is None:
        suspect_digits = digits - 1
    report = RunReport(records, digits, suspect_digits)
    report.failures.update(r.error for r in records if r.error)
    by_index = {r.index: r for r in records}

    vals = sorted((r.canonical, r.index) for r in records if r.canonical is not None)
    report.collisions = _pairs_within(vals, digits)
    collided = set(report.collisions)
    report.suspects = [p for p in _pairs_within(vals, suspect_digits) if p not in collided]

    gaps = sorted((b - a, i, j) for (a, i), (b, j) in zip(vals, vals[1:]))
    for delta, i, j in gaps[:nearest]:
        a = by_index[i].canonical
        b = by_index[j].canonical
        report.nearest.append((min(i, j), max(i, j), delta, classify_pair(a, b, digits, suspect_digits)))
    return report


def format_canon(report: RunReport) -> str:
    lines = []
    for r in report.records:
        if r.canonical is None:
            lines.append(f"{r.index} FAIL {r.error}")
        else:
            lines.append(f"{r.index} {r.canonical:.15f}")
    lines.append("# nearest pairs: i j |dCN| status")
    for i, j, delta, status in report.nearest:
        tag = {"equal": "COLLISION", "suspect": "PRECISION-SUSPECT"}.get(status, "distinct")
        lines.append(f"{i} {j} {delta:.6e} {tag}")
    for i, j in report.collisions:
        lines.append(f"# collision {i} {j}")
    for i, j in report.suspects:
        lines.append(f"# precision-suspect {i} {j}")
    lines.append(
        f"# summary graphs={len(report.records)} digits={report.digits} "
        f"collisions={len(report.collisions)} suspects={len(report.suspects)} "
        f"failures={sum(report.failures.values())}"
    )
    return "\n".join(lines)


# -- helpers ------------------------------------------------------------------

def read_graphs(path: str, fmt: str) -> list[Graph]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return read_graph6_lines(text) if fmt == "graph6" else read_edge_lists(text)


def write_graphs(graphs: list[Graph], fmt: str) -> str:
    if fmt == "graph6":
        return "".join(emit_graph6(g) + "\n" for g in graphs)
    return "\n\n".join(emit_edge_list(g) for g in graphs) + ("\n" if graphs else "")


def _mapping_text(perm) -> str:
    return ",".join(str(x) for x in perm.mapping)


def _match_one(pair, digits: int, dtype, max_iter: int, lookahead: bool) -> str:
    g1, g2 = pair
    try:
        c = find_correspondence(g1, g2, digits=digits, max_iter=max_iter, dtype=dtype, lookahead=lookahead)
    except MatchFailure as exc:
        return f"FAIL {exc.reason}"
    return f"OK {_mapping_text(c)}"


def _oracle_one(pair) -> str:
    g1, g2 = pair
    try:
        p = brute_force_isomorphism(g1, g2)
    except OracleSizeError:
        return "ERROR size-cap"
    return "NONISO" if p is None else f"ISO {_mapping_text(p)}"


# -- commands -----------------------------------------------------------------

def cmd_canon(args, out) -> int:
    graphs = read_graphs(args.input, args.format)
    report = run_canon(graphs, args.digits, args.suspect_digits, args.pairs,
                       args.precision, args.max_iter, args.jobs)
    print(format_canon(report), file=out)
    return EXIT_FAIL if report.failures else EXIT_OK


def cmd_permute(args, out) -> int:
    graphs = read_graphs(args.input, args.format)
    permuted = [apply_permutation(g, random_permutation(g.n, args.seed + k)) for k, g in enumerate(graphs)]
    out.write(write_graphs(permuted, args.format))
    return EXIT_OK


def _read_pairs(args):
    a = read_graphs(args.path_a, args.format)
    b = read_graphs(args.path_b, args.format)
    if len(a) != len(b):
        raise ValueError(f"graph counts differ: {len(a)} vs {len(b)}")
    return list(zip(a, b))


def cmd_match(args, out) -> int:
    pairs = _read_pairs(args)
    fn = partial(_match_one, digits=args.digits, dtype=resolve_dtype(args.precision),
                 max_iter=args.max_iter, lookahead=not args.no_lookahead)
    lines = _map(fn, pairs, args.jobs)
    for ln in lines:
        print(ln, file=out)
    reasons = Counter(ln.split()[1] for ln in lines if ln.startswith("FAIL"))
    tally = " ".join(f"{k}={v}" for k, v in sorted(reasons.items()))
    ok = sum(ln.startswith("OK") for ln in lines)
    print(f"# summary pairs={len(lines)} ok={ok} fail={len(lines) - ok}" + (f" {tally}" if tally else ""), file=out)
    return EXIT_FAIL if reasons else EXIT_OK


def cmd_oracle(args, out) -> int:
    lines = [_oracle_one(p) for p in _read_pairs(args)]
    for ln in lines:
        print(ln, file=out)
    return EXIT_FAIL if any(ln.startswith("ERROR") for ln in lines) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="feiso", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, numeric=True):
        p.add_argument("--format", choices=("graph6", "edges"), default="graph6")
        if numeric:
            p.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                           help="significant digits used for equality (default 9)")
            p.add_argument("--precision", choices=("double", "extended"), default="double")
            p.add_argument("--max-iter", type=int, default=MAX_ITER)
            p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("canon", help="canonical number per graph and nearest-pair scan")
    p.add_argument("input")
    common(p)
    p.add_argument("--suspect-digits", type=int, default=None,
                   help="coarser digit count for precision-suspect pairs (default digits-1)")
    p.add_argument("--pairs", type=int, default=10, help="nearest pairs to list")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("permute", help="emit a seeded random relabeling of every graph")
    p.add_argument("input")
    common(p, numeric=False)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_permute)

    p = sub.add_parser("match", help="find correspondences between paired graphs")
    p.add_argument("path_a")
    p.add_argument("path_b")
    common(p)
    p.add_argument("--no-lookahead", action="store_true",
                   help="accept the first cracker pair with equal canonical numbers")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("oracle", help="exact brute-force isomorphism verdicts (n <= 10)")
    p.add_argument("path_a")
    p.add_argument("path_b")
    common(p, numeric=False)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "digits", 1) < 1:
        parser.error("--digits must be >= 1")
    try:
        return args.func(args, out)
    except (Graph6Error, EdgeListError, OSError, ValueError) as exc:
        print(f"feiso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
