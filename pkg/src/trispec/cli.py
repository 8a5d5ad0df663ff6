"""``trispec`` command line.

Exit status: 0 clean, 1 a proven statement was violated, 2 bad input.
Results go to standard output; diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import graph as gc
from .checks import DEFAULT_TOL, Status, Tolerances, resolve_check
from .graph6 import Graph6Error, parse_graph6, to_graph6
from .majorization import (
    decompose_substochastic,
    sorted_desc,
    transfer_matrix,
    verify_norm_monotonicity,
    weak_majorization,
)
from .scan import ScanConfigError, ScanSpec, StreamParseError, run_scan
from .spectra import (
    SpectralAccuracyError,
    lambda1_subdivided_bipartite,
    spectrum_of,
    triangle_count_trace,
)
from .structure import triangle_count_direct

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _g(x: float) -> str:
    return f"{x:.12g}"


def _num(x: float) -> float:
    return float(_g(x))


def _ints(text: str, name: str, count: int | None = None) -> list[int]:
    try:
        vals = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated integers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"{name}: expected {count} integers")
    return vals


def _floats(text: str, name: str) -> list[float]:
    try:
        vals = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{name}: non-finite entry")
    return vals


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(doc, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- spectrum --------------------------------------------------------------

def _spectrum_doc(g) -> dict:
    spec = spectrum_of(g)
    try:
        trace = triangle_count_trace(spec)
    except SpectralAccuracyError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        trace = None
    return {
        "graph6": to_graph6(g),
        "n": g.order,
        "m": g.size,
        "eigenvalues": [_num(x) for x in spec.values],
        "inertia": {"positive": spec.inertia[0], "negative": spec.inertia[1],
                    "zero": spec.inertia[2]},
        "s_plus": _num(spec.s_plus),
        "s_minus": _num(spec.s_minus),
        "rank": spec.rank,
        "triangles_trace": trace,
        "triangles_direct": triangle_count_direct(g),
    }


def cmd_spectrum(args) -> int:
    records = [args.graph] if args.graph else [
        s for s in (ln.strip() for ln in _read_lines(args.file)) if s and not s.startswith("#")]
    docs = []
    for text in records:
        try:
            docs.append(_spectrum_doc(parse_graph6(text)))
        except Graph6Error as exc:
            raise UsageError(f"{text!r}: {exc}") from None
    if args.format == "json":
        print(json.dumps(docs[0] if args.graph else docs, indent=2))
        return EXIT_OK
    for d in docs:
        print(f"graph6     {d['graph6']}  (n={d['n']}, m={d['m']})")
        print("eigenvalues " + " ".join(_g(x) for x in d["eigenvalues"]))
        inertia = d["inertia"]
        print(f"inertia    +{inertia['positive']} -{inertia['negative']} 0:{inertia['zero']}"
              f"  rank {d['rank']}")
        print(f"s+ {_g(d['s_plus'])}  s- {_g(d['s_minus'])}")
        print(f"triangles  trace {d['triangles_trace']}  direct {d['triangles_direct']}")
    return EXIT_OK


# -- construct ---------------------------------------------------------------

def cmd_construct(args) -> int:
    try:
        if args.blowup:
            if args.blowup not in gc.NAMED_BASES:
                raise UsageError(f"unknown base {args.blowup!r}; "
                                 f"choose from {', '.join(gc.NAMED_BASES)}")
            if not args.sizes:
                raise UsageError("--blowup needs --sizes")
            base = gc.NAMED_BASES[args.blowup]()
            sizes = _ints(args.sizes, "--sizes", base.order)
            g = gc.blow_up(base, sizes)
        elif args.skst:
            s, t = _ints(args.skst, "--skst", 2)
            if s < 0 or t < 0:
                raise UsageError("--skst needs s, t >= 0")
            g = gc.subdivided_bipartite(s + 2, t + 2)
        elif args.yn is not None:
            g = gc.y_graph(args.yn)
        elif args.star_clique:
            k, q = _ints(args.star_clique, "--star-clique", 2)
            g = gc.star_clique_join(k, q)
        elif args.cycle is not None:
            g = gc.cycle(args.cycle)
        elif args.path is not None:
            g = gc.path(args.path)
        elif args.kbip:
            a, b = _ints(args.kbip, "--kbip", 2)
            g = gc.complete_bipartite(a, b)
        else:
            raise UsageError("choose a family: --blowup, --skst, --yn, --star-clique, "
                             "--cycle, --path or --kbip")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(to_graph6(g))
    return EXIT_OK


# -- check and scan --------------------------------------------------------

def _tolerances(args) -> Tolerances:
    return Tolerances(slack=args.slack, window=args.window, zero_rel=args.zero_rel)


def _report_exit(report) -> int:
    return EXIT_VIOLATION if report.has_violations else EXIT_OK


def cmd_check(args) -> int:
    tol = _tolerances(args)
    try:
        chk = resolve_check(args.check, tol)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    lines = _read_lines(args.graphs)
    if args.format == "json":
        spec = ScanSpec(graph6=tuple(lines), checks=(args.check,), tolerances=tol,
                        skip_errors=args.skip_errors, timing=not args.no_timing)
        report = run_scan(spec)
        print(report.to_json())
        return _report_exit(report)
    counts = {s: 0 for s in Status}
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            g = parse_graph6(text)
        except Graph6Error as exc:
            if args.skip_errors:
                print(f"warning: line {lineno}: {exc}", file=sys.stderr)
                continue
            raise UsageError(f"line {lineno}: {exc}") from None
        v = chk.func(g)
        counts[v.status] += 1
        parts = [text, v.status.value]
        if v.lhs is not None:
            parts.append(f"lhs={_g(v.lhs)} rhs={_g(v.rhs)}")
        if v.family:
            parts.append(f"family={v.family.value}")
        if v.reason:
            parts.append(f"({v.reason})")
        print(" ".join(parts))
    print(f"# {chk.name}: " + ", ".join(f"{s.value}={c}" for s, c in counts.items()))
    return EXIT_VIOLATION if counts[Status.VIOLATED] else EXIT_OK


def _orders(args) -> tuple[int, ...]:
    if args.order is not None:
        return (args.order,)
    lo, sep, hi = args.orders.partition("..")
    try:
        lo, hi = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise UsageError(f"--orders: expected A..B, got {args.orders!r}") from None
    if lo > hi:
        raise UsageError("--orders: empty range")
    return tuple(range(lo, hi + 1))


def _split(text: str | None) -> tuple[str, ...]:
    return tuple(p.strip() for p in text.split(",") if p.strip()) if text else ()


def cmd_scan(args) -> int:
    if args.graphs:
        spec = ScanSpec(graph6=tuple(_read_lines(args.graphs)),
                        filters=_split(args.filters), checks=_split(args.checks),
                        jobs=args.jobs, skip_errors=args.skip_errors,
                        timing=not args.no_timing, tolerances=_tolerances(args))
    else:
        if args.order is None and args.orders is None:
            raise UsageError("give --order, --orders or --graphs")
        spec = ScanSpec(orders=_orders(args), filters=_split(args.filters),
                        checks=_split(args.checks), jobs=args.jobs,
                        timing=not args.no_timing, tolerances=_tolerances(args))
    report = run_scan(spec)
    if args.format == "json":
        print(report.to_json())
    else:
        print(f"graphs: {report.graphs_seen} seen, {report.graphs_scanned} after filters")
        for cid, t in report.totals.items():
            print(f"{cid:16s} " + " ".join(f"{k}={v}" for k, v in t.items()))
        print(f"equality cases: {len(report.equality_cases)}  "
              f"candidates: {len(report.candidates)}  violations: {len(report.violations)}")
        for v in report.violations:
            print(f"VIOLATED {v['check']} {v['graph6']} lhs={v['lhs']} rhs={v['rhs']}")
        if spec.timing:
            print(f"wall {report.wall_ms} ms")
    return _report_exit(report)


# -- majorization ------------------------------------------------------------

def cmd_majorize(args) -> int:
    x = _floats(args.x, "--x")
    y = _floats(args.y, "--y")
    if len(x) != len(y):
        raise UsageError("--x and --y must have the same length (pad with zeros)")
    if any(v < 0 for v in x + y):
        raise UsageError("entries must be non-negative")
    if not args.p > 1:
        raise UsageError("--p must exceed 1")
    cert = weak_majorization(y, x)
    doc = {"x_sorted": [_num(v) for v in sorted_desc(x)],
           "y_sorted": [_num(v) for v in sorted_desc(y)],
           "prefix_x": [_num(v) for v in cert.prefix_x],
           "prefix_y": [_num(v) for v in cert.prefix_y],
           "weak": cert.weak, "strong": cert.strong}
    lines = [f"weak={str(cert.weak).lower()} strong={str(cert.strong).lower()}"]
    if cert.weak:
        xs, ys = sorted_desc(x), sorted_desc(y)
        a = transfer_matrix(ys, xs)
        verdict = verify_norm_monotonicity(ys, xs, args.p)
        err = float(np.abs(a @ xs - ys).max())
        doc.update({"transfer_matrix": [[_num(v) for v in row] for row in a],
                    "transfer_error": _num(err), "p": args.p, "norm": verdict.value})
        lines.append(f"norm ({_g(args.p)}): {verdict.value}")
        lines.append("A =")
        lines += ["  " + " ".join(_g(v) for v in row) for row in a]
        lines.append(f"max |A x - y| = {_g(err)}")
    _emit(doc, args.format, lines)
    return EXIT_OK


def _read_matrix(path: str) -> np.ndarray:
    tokens = " ".join(_read_lines(path)).split()
    try:
        n = int(tokens[0])
        vals = [float(t) for t in tokens[1:]]
    except (IndexError, ValueError):
        raise UsageError("matrix file: first token is n, then n*n numbers") from None
    if n < 1 or len(vals) != n * n:
        raise UsageError(f"matrix file: expected {n * n} entries, got {len(vals)}")
    return np.array(vals).reshape(n, n)


def cmd_decompose(args) -> int:
    a = _read_matrix(args.matrix)
    try:
        dec = decompose_substochastic(a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    terms = [{"weight": _num(w), "mapping": {str(j): r for j, r in p.mapping.items()}}
             for w, p in dec.terms]
    doc = {"n": a.shape[0], "terms": terms,
           "weight_sum": _num(float(dec.weights.sum())),
           "reconstruction_error": _num(dec.reconstruction_error)}
    lines = [f"{len(terms)} terms, reconstruction error {_g(dec.reconstruction_error)}"]
    for t in terms:
        pairs = " ".join(f"{j}->{r}" for j, r in t["mapping"].items()) or "(zero matrix)"
        lines.append(f"  {_g(t['weight'])}  column->row {pairs}")
    _emit(doc, args.format, lines)
    return EXIT_OK


def cmd_lambda1_skst(args) -> int:
    if args.s < 0 or args.t < 0:
        raise UsageError("--s and --t must be non-negative")
    # bisect to machine precision so the printed 12th decimal is stable
    root = lambda1_subdivided_bipartite(args.s, args.t, tol=0.0)
    if args.format == "json":
        print(json.dumps({"s": args.s, "t": args.t, "lambda1": _num(root)}))
    else:
        print(f"{root:.12f}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def _fmt(p, default="text"):
    p.add_argument("--format", choices=("text", "json"), default=default)


def _tol_flags(p):
    p.add_argument("--slack", type=float, default=DEFAULT_TOL.slack,
                   help="strict-comparison slack (default %(default)g)")
    p.add_argument("--window", type=float, default=DEFAULT_TOL.window,
                   help="equality window (default %(default)g)")
    p.add_argument("--zero-rel", type=float, default=DEFAULT_TOL.zero_rel,
                   help="relative zero threshold for inertia (default %(default)g)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trispec",
                     description="Spectral extremal graph checks and scans.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="adjacency spectrum of a graph6 graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph6 string")
    src.add_argument("--file", help="file with one graph6 per line ('-' for stdin)")
    _fmt(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("construct", help="emit a family member as graph6")
    fam = p.add_mutually_exclusive_group(required=True)
    fam.add_argument("--blowup", metavar="BASE", help=f"one of {', '.join(gc.NAMED_BASES)}")
    fam.add_argument("--skst", metavar="S,T", help="S(K_{s+2,t+2})")
    fam.add_argument("--yn", type=int, metavar="N")
    fam.add_argument("--star-clique", metavar="K,Q")
    fam.add_argument("--cycle", type=int, metavar="N")
    fam.add_argument("--path", type=int, metavar="N")
    fam.add_argument("--kbip", metavar="A,B")
    p.add_argument("--sizes", metavar="A,B,...", help="class sizes for --blowup")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="run one check over a graph6 file")
    p.add_argument("--check", required=True, help="check id, e.g. tf-sum or edge-bound:2")
    p.add_argument("--graphs", required=True, metavar="FILE", help="'-' reads stdin")
    p.add_argument("--skip-errors", action="store_true", help="skip malformed lines")
    p.add_argument("--no-timing", action="store_true", help="report wall_ms as 0")
    _fmt(p)
    _tol_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="scan labeled graphs or a graph6 corpus")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--order", type=int)
    src.add_argument("--orders", metavar="A..B")
    src.add_argument("--graphs", metavar="FILE", help="graph6 corpus ('-' for stdin)")
    p.add_argument("--filters", default="", help="comma-separated filter names")
    p.add_argument("--checks", default="classical", help="comma-separated check ids")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--skip-errors", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="report wall_ms as 0")
    _fmt(p)
    _tol_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("majorize", help="weak majorization certificate of y by x")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--p", type=float, default=2.0)
    _fmt(p)
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser("decompose", help="weak-permutation decomposition of a matrix")
    p.add_argument("--matrix", required=True, metavar="FILE")
    _fmt(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("lambda1-skst", help="spectral radius of S(K_{s+2,t+2})")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    _fmt(p)
    p.set_defaults(func=cmd_lambda1_skst)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"trispec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScanConfigError, StreamParseError) as exc:
        print(f"trispec {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
