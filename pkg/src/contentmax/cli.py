"""Command-line interface.

Exit status: 0 on success, 1 when an internal check or verification fails,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import verify
from .bounds import KINDS, bound_report
from .graph import GraphError, as_label, is_dag, is_nilpotent, mat_pow, mat_weight, weight
from .io import ParseError, format_edge_list, format_matrix, format_rational, read_edge_list, read_matrix
from .optimizer import optimize
from .patterns import PatternError, enumerate_copies, parse_pattern_spec
from .search import max_ct_over_dags, max_ct_over_digraphs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DISPLAY_CAP = 10


class UsageError(Exception):
    pass


def approx(x: Fraction) -> str:
    """20 significant digits, for display only."""
    with localcontext() as ctx:
        ctx.prec = 20
        return f"{Decimal(x.numerator) / Decimal(x.denominator):.20g}"


def threads_from_env() -> int:
    raw = os.environ.get("CONTENTMAX_THREADS")
    if raw is None:
        return 1
    if not raw.isdigit() or int(raw) < 1:
        raise UsageError(f"CONTENTMAX_THREADS must be a positive integer, got {raw!r}")
    return int(raw)


def _print_fields(fields: list[tuple[str, object]]) -> None:
    width = max(len(k) for k, _ in fields) + 1
    for key, value in fields:
        print(f"{key + ':':<{width}} {value}")


def _load(args) -> tuple:
    return read_edge_list(args.graph), parse_pattern_spec(args.pattern)


def cmd_ct(args) -> int:
    g, pattern = _load(args)
    copies = enumerate_copies(g, pattern)
    total = sum((c.content(g) for c in copies), Fraction(0))
    _print_fields([
        ("pattern", pattern),
        ("copies", len(copies)),
        ("ct", format_rational(total)),
        ("ct_approx", f"~{approx(total)}"),
        ("weight", format_rational(weight(g))),
        ("dag", "yes" if is_dag(g) else "no"),
    ])
    return EXIT_OK


def cmd_optimize(args) -> int:
    g, pattern = _load(args)
    result = optimize(g, pattern)
    if args.trace:
        for line in result.trace.lines():
            print(line)
    ok = result.ct_after >= result.ct_before and weight(result.graph) == weight(g)
    _print_fields([
        ("pattern", pattern),
        ("ct_before", format_rational(result.ct_before)),
        ("ct_after", format_rational(result.ct_after)),
        ("weight", format_rational(weight(result.graph))),
        ("steps", len(result.trace)),
        ("coverage", "yes" if result.covered else "no (some edge lies on no copy)"),
    ])
    text = format_edge_list(result.graph)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print("final graph:")
        print(text, end="")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bound(args) -> int:
    try:
        N = as_label(args.N)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    is_path = args.kind.startswith("path")
    order = args.k if is_path else args.a
    if order is None:
        raise UsageError(f"--kind {args.kind} needs {'--k' if is_path else '--a'}")
    if args.kind.endswith("int") and N.denominator != 1:
        raise UsageError(f"--kind {args.kind} needs an integer N, got {N}")
    if args.t is not None and args.kind != "star-real":
        raise UsageError("--t only applies to --kind star-real")
    try:
        rep = bound_report(args.kind, N, order, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    witness_ct = rep.witness_value()
    ok = witness_ct is None or witness_ct == rep.value
    if args.json:
        doc = rep.as_dict()
        if witness_ct is not None:
            doc["witness_ct"] = str(witness_ct)
        print(json.dumps(doc, indent=2))
        return EXIT_OK if ok else EXIT_FAIL
    fields = [("kind", rep.kind), ("N", format_rational(rep.N)), (rep.order_name, rep.order),
              ("value", format_rational(rep.value)), ("value_approx", f"~{approx(rep.value)}")]
    if rep.labels is not None:
        fields.append(("tuple", ",".join(format_rational(Fraction(x)) for x in rep.labels)))
    if rep.t is not None:
        fields.append((f"value_at_t={rep.t}", format_rational(rep.finite_value)))
    fields.append(("attained", "yes" if rep.attained else "no"))
    fields.append(("witness", rep.witness_note))
    if witness_ct is not None:
        fields.append(("witness_ct", format_rational(witness_ct)))
    _print_fields(fields)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args) -> int:
    pattern = parse_pattern_spec(args.pattern)
    if args.edges < 1:
        raise UsageError("--edges must be a positive integer")
    v = args.max_vertices if args.max_vertices is not None else pattern.num_vertices + 2
    if v < pattern.num_vertices:
        raise UsageError(f"--max-vertices {v} is smaller than the pattern's {pattern.num_vertices} vertices")
    if v < 2:
        raise UsageError("--max-vertices must be at least 2")
    searcher = max_ct_over_digraphs if args.all_digraphs else max_ct_over_dags
    sr = searcher(args.edges, pattern, v, workers=threads_from_env())
    _print_fields([
        ("pattern", pattern),
        ("edges", args.edges),
        ("max_vertices", v),
        ("space", sr.parameters["space"]),
        ("search_space_size", sr.search_space_size),
        ("best", format_rational(sr.best_value)),
        ("maximizers", len(sr.maximizers)),
    ])
    for i, g in enumerate(sr.maximizers[:DISPLAY_CAP]):
        print(f"# maximizer {i + 1}")
        print(format_edge_list(g), end="")
    if len(sr.maximizers) > DISPLAY_CAP:
        print(f"# ... {len(sr.maximizers) - DISPLAY_CAP} more (use --out for the full list)")
    if args.out:
        chunks = [f"# maximizer {i + 1}\n" + format_edge_list(g) for i, g in enumerate(sr.maximizers)]
        Path(args.out).write_text("\n".join(chunks))
    return EXIT_OK


_SUITE_OPTIONS = {
    "paths": {"max_n": "max_n", "max_k": "max_k"},
    "compositions": {"max_n": "max_n", "max_k": "max_k"},
    "matrix": {"trials": "trials", "seed": "seed"},
    "merge": {"graphs": "graphs", "seed": "seed"},
    "stars": {"max_n": "max_n", "max_a": "max_a"},
    "supremum": {"max_t": "max_t"},
    "lemma": {},
    "crosscheck": {"graphs": "graphs", "seed": "seed"},
    "dedup": {"graphs": "graphs", "seed": "seed"},
    "roundtrip": {"graphs": "count", "seed": "seed"},
}


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    workers = threads_from_env()
    all_ok = True
    for name in names:
        kwargs = {param: getattr(args, opt) for opt, param in _SUITE_OPTIONS[name].items()
                  if getattr(args, opt) is not None}
        if name == "lemma" and args.k:
            kwargs["cases"] = tuple((k, 2 * k, 2 * k) for k in args.k)
        if name == "paths":
            kwargs["workers"] = workers
        result = verify.SUITES[name](**kwargs)
        for case in result.cases:
            if not args.quiet or not case.passed:
                print(case.line())
        print(result.summary())
        all_ok &= result.passed
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_matpow(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    a = read_matrix(args.matrix)
    power = mat_pow(a, args.k)
    total, total_k = mat_weight(a), mat_weight(power)
    print(f"A^{args.k}:")
    print(format_matrix(power), end="")
    nilpotent = is_nilpotent(a, cross_check=True)
    fields = [("|A|", format_rational(total)), (f"|A^{args.k}|", format_rational(total_k)),
              ("nilpotent", "yes" if nilpotent else "no")]
    ok = True
    if nilpotent:
        bound = (total / args.k) ** args.k
        ok = total_k <= bound
        fields.append((f"bound (|A|/{args.k})^{args.k}", format_rational(bound)))
        fields.append(("bound_holds", "yes" if ok else "NO"))
    else:
        fields.append(("bound", "skipped (not nilpotent)"))
    _print_fields(fields)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contentmax", description="Content sums of pattern copies in labeled digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ct", help="count copies of a pattern and their content sum")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True, help="path:K, star:A, equistar:A:L or file:PATH")
    p.set_defaults(func=cmd_ct)

    p = sub.add_parser("optimize", help="run the label-merge procedure")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("bound", help="closed-form extremal values")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--N", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--json", action="store_true", help="print a JSON document instead of aligned text")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="exhaustive maximum over small integer-labeled graphs")
    p.add_argument("--edges", required=True, type=int, help="total weight N")
    p.add_argument("--pattern", required=True)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--all-digraphs", action="store_true", help="search all loop-free digraphs, not only DAGs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=[*verify.SUITES, "all"])
    p.add_argument("--seed", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-k", type=int)
    p.add_argument("--max-a", type=int)
    p.add_argument("--max-t", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--graphs", type=int)
    p.add_argument("--k", type=int, nargs="+", help="lemma suite: path lengths (caps 2k/2k)")
    p.add_argument("--quiet", action="store_true", help="only print failing cases and summaries")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("matpow", help="exact matrix power and the nilpotent bound")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", required=True, type=int)
    p.set_defaults(func=cmd_matpow)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, PatternError, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
