"""Command-line front-end.

Exit codes: 0 success, 2 usage error, 3 guarded refusal (instance too large
for exact enumeration), 4 I/O or input-format error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .decompose import decompose_blocks
from .experiments import (GeneratorConfig, gen_balanced, gen_sparse,
                          greedy_critical, recover_bipartition, sweep)
from .graph import ParseError, parse_edge_list, serialize_edge_list
from .oracle import EnumerationGuardError, exact_balance_rate
from .sampler import (NAIVE_MC, RAO_BLACKWELL, CompareRecord, SamplePlan,
                      estimate, prefix_estimates, run_compare)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_IO = 4

_METHODS = {"mc": NAIVE_MC, "rb": RAO_BLACKWELL}


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _confidence(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"confidence must be in (0, 1), got {value}")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number list: {text!r}")


def _default_threads() -> int:
    env = os.environ.get("BALANCERATE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _load_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _add_sampling_flags(p: argparse.ArgumentParser):
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--confidence", type=_confidence, default=0.95)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive_int, default=_default_threads())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balancerate",
        description="Balance-rate estimation for uncertain signed graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate the balance rate")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=sorted(_METHODS), default="rb")
    p.add_argument("--edge-order", choices=["input", "shuffled_per_sample"],
                   default="input")
    _add_sampling_flags(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--prefix-csv", metavar="PATH",
                   help="also write the prefix trace (n,estimate,lo,hi)")

    p = sub.add_parser("oracle", help="exact balance rate by enumeration")
    p.add_argument("--input", required=True)

    p = sub.add_parser("compare", help="naive MC vs Rao-Blackwellized sampling")
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive_int, default=_default_threads())
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("decompose", help="print the block structure as JSON")
    p.add_argument("--input", required=True)

    p = sub.add_parser("gen", help="generate a sparse synthetic instance")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--neg-ratio", type=float, default=0.15)
    p.add_argument("--prob-scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("gen-balanced", help="generate a balanced base graph")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--neg-ratio", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="balance rate over an (eta, p_mul) grid")
    p.add_argument("--base", required=True,
                   help="balanced base graph (bipartition is recovered from it)")
    p.add_argument("--etas", type=_float_list, required=True)
    p.add_argument("--pmuls", type=_float_list, required=True)
    p.add_argument("--csv", required=True)
    _add_sampling_flags(p)

    p = sub.add_parser("critical", help="greedy critical-edge recovery")
    p.add_argument("--input", required=True)
    p.add_argument("--candidates", required=True,
                   help="file of candidate edge indices, one per line")
    p.add_argument("--k", type=_positive_int, default=5)
    _add_sampling_flags(p)

    return parser


def _cmd_estimate(args) -> int:
    graph = _load_graph(args.input)
    plan = SamplePlan(method=_METHODS[args.method], samples=args.samples,
                      confidence=args.confidence, seed=args.seed,
                      threads=args.threads, edge_order=args.edge_order)
    report = estimate(graph, plan)
    if args.prefix_csv:
        rows = prefix_estimates(graph, plan)
        with open(args.prefix_csv, "w", encoding="utf-8") as fh:
            fh.write("n,estimate,lo,hi\n")
            for row in rows:
                lo = "" if row.lo is None else repr(row.lo)
                hi = "" if row.hi is None else repr(row.hi)
                fh.write(f"{row.n},{row.estimate!r},{lo},{hi}\n")
    if args.json:
        print(report.to_json())
    else:
        if report.lo is not None:
            print(f"balance rate {report.point:.6f}  "
                  f"[{report.lo:.6f}, {report.hi:.6f}] @ {report.confidence:g}  "
                  f"({report.method}, N={report.samples}, {report.millis:.1f} ms)")
        else:
            print(f"balance rate {report.point:.6f}  "
                  f"({report.method}, N={report.samples})")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    graph = _load_graph(args.input)
    rate = exact_balance_rate(graph)
    print(json.dumps({"exact_rate": rate, "edges": graph.edge_count,
                      "enumerated": 1 << graph.edge_count}))
    return EXIT_OK


def _cmd_compare(args) -> int:
    graph = _load_graph(args.input)
    dataset = os.path.splitext(os.path.basename(args.input))[0]
    record = run_compare(graph, args.samples, seed=args.seed,
                         threads=args.threads, dataset=dataset)
    if args.json:
        print(json.dumps(record.to_dict()))
    else:
        print(CompareRecord.CSV_HEADER)
        print(record.csv_row())
    return EXIT_OK


def _cmd_decompose(args) -> int:
    graph = _load_graph(args.input)
    blocks = decompose_blocks(graph)
    out = [{"vertices": b.local_vertex_count, "edges": b.edge_count,
            "origin_min": min(b.origin_map), "origin_max": max(b.origin_map)}
           for b in blocks]
    print(json.dumps({"blocks": out}))
    return EXIT_OK


def _cmd_gen(args) -> int:
    config = GeneratorConfig(n=args.n, negative_ratio=args.neg_ratio,
                             prob_scale=args.prob_scale, seed=args.seed)
    graph = gen_sparse(config)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_edge_list(graph))
    print(f"wrote {graph.vertex_count} vertices, {graph.edge_count} edges "
          f"to {args.out}")
    return EXIT_OK


def _cmd_gen_balanced(args) -> int:
    graph, _ = gen_balanced(args.n, args.m, negative_ratio=args.neg_ratio,
                            seed=args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_edge_list(graph))
    print(f"wrote {graph.vertex_count} vertices, {graph.edge_count} edges "
          f"to {args.out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    graph = _load_graph(args.base)
    bipartition = recover_bipartition(graph)
    plan = SamplePlan(method=RAO_BLACKWELL, samples=args.samples,
                      confidence=args.confidence, seed=args.seed,
                      threads=args.threads)
    rows = sweep(graph, bipartition, args.etas, args.pmuls, plan)
    with open(args.csv, "w", encoding="utf-8") as fh:
        fh.write("eta,p_mul,estimate,lo,hi\n")
        for row in rows:
            fh.write(f"{row.eta!r},{row.p_mul!r},{row.estimate!r},"
                     f"{row.lo!r},{row.hi!r}\n")
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_OK


def _cmd_critical(args) -> int:
    graph = _load_graph(args.input)
    with open(args.candidates, "r", encoding="utf-8") as fh:
        candidates = [int(line.split()[0]) for line in fh
                      if line.strip() and not line.startswith("#")]
    plan = SamplePlan(method=RAO_BLACKWELL, samples=args.samples,
                      confidence=args.confidence, seed=args.seed,
                      threads=args.threads)
    try:
        selected = greedy_critical(graph, candidates, args.k, plan)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps({"selected": selected}))
    return EXIT_OK


_COMMANDS = {
    "estimate": _cmd_estimate,
    "oracle": _cmd_oracle,
    "compare": _cmd_compare,
    "decompose": _cmd_decompose,
    "gen": _cmd_gen,
    "gen-balanced": _cmd_gen_balanced,
    "sweep": _cmd_sweep,
    "critical": _cmd_critical,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EnumerationGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
