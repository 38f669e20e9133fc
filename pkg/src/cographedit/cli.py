"""Command-line front end: ``cographedit solve|verify|analyze|recognize|generate``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from .analyzer import ANALYZERS, full_report
from .decomposition import classify_rule_free, recognize_spider
from .graph import Graph, Mode, make_graph
from .graphio import GraphFormatError, format_certificate, format_graph, read_certificate, read_graph
from .p4 import find_induced_p4, is_cograph
from .rules import find_p4_sparse_violation, find_rule_application, load_exceptions, obstruction_name
from .search import solve, solve_min, verify_certificate

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _load_exceptions(path: Optional[str]):
    return load_exceptions(path) if path else None


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    exceptions = _load_exceptions(args.exceptions)
    common = dict(exceptions=exceptions, use_b1=args.use_b1, threads=args.threads, prune=not args.no_prune)
    if args.k is None:
        result = solve_min(g, args.mode, **common)
    else:
        result = solve(g, args.k, args.mode, **common)
    cert = result.sorted_certificate() if result.decision else None
    if args.json:
        doc = {
            "mode": args.mode,
            "n": g.n,
            "m": g.m,
            "k": args.k,
            "decision": result.decision,
            "k_used": result.k_used,
            "certificate": None if cert is None else [
                {"u": u, "v": v, "op": "-" if g.has_edge(u, v) else "+"} for u, v in cert
            ],
            "stats": result.stats.to_dict(),
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"mode: {args.mode}")
        print(f"k: {'minimum' if args.k is None else args.k}")
        print(f"result: {_yes(result.decision)}")
        if result.decision:
            print(f"k_used: {result.k_used}")
            print("certificate:")
            sys.stdout.write(format_certificate(g, cert, args.mode))
        stats = result.stats
        print(f"nodes: {stats.nodes}  max_depth: {stats.max_depth}")
        fires = " ".join(f"{k}={v}" for k, v in sorted(stats.rule_fires.items())) or "-"
        print(f"rule fires: {fires}")
    return EXIT_YES if result.decision else EXIT_NO


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    pairs = read_certificate(args.certificate, g, args.mode)
    ok = verify_certificate(g, pairs, args.mode)
    if args.json:
        print(json.dumps({"mode": args.mode, "size": len(pairs), "valid": ok}))
    else:
        print(f"certificate of size {len(pairs)}: {'valid' if ok else 'invalid'}")
    return EXIT_YES if ok else EXIT_NO


def cmd_analyze(args) -> int:
    rules = tuple(args.rule) if args.rule else tuple(ANALYZERS)
    minimize = {"auto": None, "on": True, "off": False}[args.minimize]
    report = full_report(args.mode, rules, _load_exceptions(args.exceptions), minimize)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_YES if report.passed else EXIT_NO


def recognize(g: Graph, mode) -> dict:
    w = find_induced_p4(g)
    doc = {"n": g.n, "m": g.m, "cograph": w is None, "p4": None if w is None else list(w.vertices)}
    bad = find_p4_sparse_violation(g)
    doc["p4_sparse"] = bad is None
    if bad is not None:
        from .graph import induced_subgraph

        doc["p4_sparse_obstruction"] = {"vertices": list(bad), "name": obstruction_name(induced_subgraph(g, bad)[0])}
    spider = recognize_spider(g)
    doc["spider"] = None if spider is None else {
        "kind": spider.kind, "S": list(spider.S), "K": list(spider.K), "R": list(spider.R),
        "legs": [list(p) for p in spider.phi],
    }
    match = None if doc["cograph"] else find_rule_application(g, mode)
    doc["rule"] = None if match is None else match.rule
    if doc["cograph"]:
        doc["classification"] = "cograph"
    elif match is not None:
        doc["classification"] = "rule applies"
    else:
        doc["classification"] = classify_rule_free(g, mode).tag
    return doc


def cmd_recognize(args) -> int:
    g = read_graph(args.graph)
    doc = recognize(g, args.mode)
    if args.json:
        print(json.dumps(doc, indent=2))
        return EXIT_YES
    print(f"cograph: {_yes(doc['cograph'])}" + ("" if doc["cograph"] else f"  (P4 on {' '.join(map(str, doc['p4']))})"))
    line = f"P4-sparse: {_yes(doc['p4_sparse'])}"
    if not doc["p4_sparse"]:
        ob = doc["p4_sparse_obstruction"]
        line += f"  ({ob['name']} on {' '.join(map(str, ob['vertices']))})"
    print(line)
    sp = doc["spider"]
    if sp is None:
        print("spider: no")
    else:
        legs = " ".join(f"{s}-{k}" for s, k in sp["legs"])
        print(f"spider: kind={sp['kind']} q={len(sp['S'])} S={sp['S']} K={sp['K']} R={sp['R']} legs {legs}")
    if doc["rule"]:
        print(f"rule ({args.mode}): {doc['rule']}")
    print(f"classification ({args.mode}): {doc['classification']}")
    return EXIT_YES


def cmd_generate(args) -> int:
    rng = random.Random(args.seed)
    n = args.n
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < args.p]
    sys.stdout.write(format_graph(make_graph(n, edges)))
    return EXIT_YES


def _rule_name(text: str) -> str:
    name = text.upper()
    if name not in ANALYZERS:
        raise argparse.ArgumentTypeError(f"unknown rule {text!r} (choose from {', '.join(ANALYZERS)})")
    return name


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a natural number")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cographedit", description="Exact cograph deletion / editing.")
    sub = parser.add_subparsers(dest="command", required=True)
    mode_kw = dict(choices=[m.value for m in Mode], default=Mode.DELETION.value)

    p = sub.add_parser("solve", help="decide (with --k) or minimise the modification size")
    p.add_argument("graph")
    p.add_argument("--mode", **mode_kw)
    p.add_argument("--k", type=_natural, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--exceptions", metavar="PATH")
    p.add_argument("--threads", type=_natural, default=1, help="component workers (0 = auto)")
    p.add_argument("--use-b1", action="store_true", help="allow the plain obstruction rule in deletion")
    p.add_argument("--no-prune", action="store_true", help="disable the P4-packing lower bound")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--mode", **mode_kw)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="branching-number report for the rules")
    p.add_argument("--rule", type=_rule_name, action="append", help="restrict to a rule (repeatable)")
    p.add_argument("--mode", **mode_kw)
    p.add_argument("--json", action="store_true")
    p.add_argument("--exceptions", metavar="PATH")
    p.add_argument("--minimize", choices=("auto", "on", "off"), default="auto",
                   help="minimise over induced subgraphs (auto: deletion on, editing off)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("recognize", help="cograph / P4-sparse / spider / rule-free class")
    p.add_argument("graph")
    p.add_argument("--mode", **mode_kw)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("generate", help="write a G(n, p) graph file to stdout")
    p.add_argument("n", type=_natural)
    p.add_argument("p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
