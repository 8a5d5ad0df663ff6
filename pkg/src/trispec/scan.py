"""Exhaustive and streamed scans of the theorem checkers.

Work is cut into chunks (a range of edge bitmasks, or a slice of graph6
records). Every chunk yields a partial report; partial reports merge by
addition and list concatenation, and the final report sorts its lists, so the
output does not depend on how chunks were scheduled.
"""
from __future__ import annotations

import json
import logging
import multiprocessing as mp
import re
import time
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field

import numpy as np

from . import structure as st
from .checks import DEFAULT_TOL, Status, Tolerances, resolve_check
from .graph import Graph
from .graph6 import Graph6Error, parse_graph6, to_graph6
from .spectra import attach_eigenvalues, eigenvalues_sym_batch, spectrum_of

log = logging.getLogger(__name__)

MAX_ENUMERATION_ORDER = 8
DEFAULT_CHUNK = 16384
_FLOAT_DIGITS = 12


class ScanConfigError(ValueError):
    """The scan request itself is invalid (exit status 2)."""


# -- sources -----------------------------------------------------------------

def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise ScanConfigError(
            f"internal enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")


def enumerate_labeled(n: int) -> Iterator[Graph]:
    """All labeled graphs on ``n`` vertices in increasing edge-bitmask order."""
    _check_order(n)
    for mask in range(1 << (n * (n - 1) // 2)):
        yield Graph.from_edge_mask(n, mask)


class StreamParseError(ValueError):
    def __init__(self, lineno: int, cause: Exception):
        super().__init__(f"line {lineno}: {cause}")
        self.lineno = lineno


def _records(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if text and not text.startswith("#"):
            yield lineno, text


def ingest_graph6_stream(lines: Iterable[str], skip_errors: bool = False) -> Iterator[Graph]:
    """Parse one graph6 record per line; blank and ``#`` lines are skipped.

    A malformed line raises :class:`StreamParseError` naming it, unless
    ``skip_errors`` is set, in which case it is logged and dropped.
    """
    for lineno, text in _records(lines):
        try:
            yield parse_graph6(text)
        except Graph6Error as exc:
            if not skip_errors:
                raise StreamParseError(lineno, exc) from exc
            log.warning("skipping line %d: %s", lineno, exc)


# -- filters -------------------------------------------------------------------

def _clique_free(size: int) -> Callable[[Graph], bool]:
    return lambda g: not st.has_clique(g, size)


def _odd_girth_at_least(k: int) -> Callable[[Graph], bool]:
    def pred(g):
        og = st.odd_girth(g)
        return og is None or og >= k
    return pred


_SIMPLE_FILTERS: dict[str, Callable[[Graph], bool]] = {
    "triangle-free": lambda g: not st.has_triangle(g),
    "non-bipartite": lambda g: not st.is_bipartite(g),
    "bipartite": st.is_bipartite,
    "connected": lambda g: g.is_connected(),
    "no-isolated": lambda g: g.min_degree() >= 1,
}


def resolve_filter(name: str) -> Callable[[Graph], bool]:
    """Filter names: ``triangle-free``, ``k<s>-free`` (no clique on s
    vertices), ``non-bipartite``, ``bipartite``, ``connected``,
    ``no-isolated``, ``odd-girth:<g>`` (bipartite graphs pass, having no odd
    cycle at all), ``max-size:<m>`` and ``min-size:<m>``."""
    name = name.strip()
    if name in _SIMPLE_FILTERS:
        return _SIMPLE_FILTERS[name]
    if m := re.fullmatch(r"k(\d+)-free", name):
        size = int(m.group(1))
        if size < 2:
            raise ScanConfigError("clique size in k<s>-free must be >= 2")
        return _clique_free(size)
    if m := re.fullmatch(r"odd-girth:(\d+)", name):
        return _odd_girth_at_least(int(m.group(1)))
    if m := re.fullmatch(r"max-size:(\d+)", name):
        cap = int(m.group(1))
        return lambda g: g.size <= cap
    if m := re.fullmatch(r"min-size:(\d+)", name):
        floor = int(m.group(1))
        return lambda g: g.size >= floor
    raise ScanConfigError(f"unknown filter {name!r}")


# filters that read only the edge count run first
def _filter_cost(name: str) -> int:
    if name.startswith(("max-size", "min-size")):
        return 0
    if name in ("no-isolated", "connected", "triangle-free", "non-bipartite", "bipartite"):
        return 1
    return 2


# -- spec and report -----------------------------------------------------------

@dataclass(frozen=True)
class ScanSpec:
    """What to scan. Exactly one of ``orders`` (internal enumeration) and
    ``graph6`` (records, one per line) is used."""

    orders: tuple[int, ...] = ()
    graph6: tuple[str, ...] | None = None
    filters: tuple[str, ...] = ()
    checks: tuple[str, ...] = ("classical",)
    jobs: int = 1
    skip_errors: bool = False
    timing: bool = True
    chunk_size: int = DEFAULT_CHUNK
    tolerances: Tolerances = DEFAULT_TOL

    def validate(self) -> None:
        if (self.graph6 is None) == (not self.orders):
            raise ScanConfigError("give either orders or a graph6 source, not both or neither")
        for n in self.orders:
            _check_order(n)
        if not self.checks:
            raise ScanConfigError("no checks requested")
        if self.jobs < 1:
            raise ScanConfigError("jobs must be >= 1")
        if self.chunk_size < 1:
            raise ScanConfigError("chunk_size must be >= 1")
        for f in self.filters:
            resolve_filter(f)
        self.resolved_checks()

    def resolved_checks(self):
        try:
            return [resolve_check(c, self.tolerances) for c in self.checks]
        except (KeyError, ValueError) as exc:
            raise ScanConfigError(str(exc.args[0] if exc.args else exc)) from exc

    def echo(self) -> dict:
        """Parameters reproduced in the report; worker count and chunking are
        left out because they must not change the output."""
        d = {
            "filters": sorted(self.filters),
            "checks": [c.name for c in self.resolved_checks()],
            "tolerances": {"slack": self.tolerances.slack,
                           "window": self.tolerances.window,
                           "zero_rel": self.tolerances.zero_rel},
        }
        if self.orders:
            d["source"] = "enumeration"
            d["orders"] = list(self.orders)
        else:
            d["source"] = "graph6"
            d["records"] = sum(1 for _ in _records(self.graph6))
        return d


_STATUS_KEYS = {
    Status.HOLDS: "holds",
    Status.EQUALITY: "equality",
    Status.VIOLATED: "violated",
    Status.NOT_APPLICABLE: "not_applicable",
    Status.CANDIDATE: "candidates",
}


def _empty_totals() -> dict[str, int]:
    return {k: 0 for k in _STATUS_KEYS.values()}


@dataclass
class ScanReport:
    spec: dict
    totals: dict[str, dict[str, int]]
    graphs_seen: int = 0
    graphs_scanned: int = 0
    equality_cases: list[dict] = field(default_factory=list)
    candidates: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    zero_review: list[dict] = field(default_factory=list)
    wall_ms: int = 0

    def merge(self, other: ScanReport) -> None:
        for cid, counts in other.totals.items():
            mine = self.totals.setdefault(cid, _empty_totals())
            for k, v in counts.items():
                mine[k] += v
        self.graphs_seen += other.graphs_seen
        self.graphs_scanned += other.graphs_scanned
        self.equality_cases += other.equality_cases
        self.candidates += other.candidates
        self.violations += other.violations
        self.zero_review += other.zero_review

    def finalize(self) -> None:
        key = lambda d: (d["graph6"], d["check"])
        self.equality_cases.sort(key=key)
        self.candidates.sort(key=key)
        self.violations.sort(key=key)
        self.zero_review.sort(key=lambda d: d["graph6"])

    @property
    def has_violations(self) -> bool:
        return any(t["violated"] for t in self.totals.values())

    @property
    def exit_status(self) -> int:
        return 1 if self.has_violations else 0

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "totals": {cid: dict(t) for cid, t in self.totals.items()},
            "graphs_seen": self.graphs_seen,
            "graphs_scanned": self.graphs_scanned,
            "equality_cases": self.equality_cases,
            "candidates": self.candidates,
            "violations": self.violations,
            "zero_review": self.zero_review,
            "wall_ms": self.wall_ms,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)


def fmt_float(x: float) -> float:
    """Round to 12 significant digits so serialised floats are reproducible."""
    return float(f"{x:.{_FLOAT_DIGITS}g}")


# -- per-chunk work --------------------------------------------------------

def _evaluate(graphs: list[Graph], spec: ScanSpec, report: ScanReport) -> None:
    """Filter, batch-solve spectra, and run every check on ``graphs``."""
    report.graphs_seen += len(graphs)
    preds = [resolve_filter(f) for f in sorted(spec.filters, key=_filter_cost)]
    kept = [g for g in graphs if all(p(g) for p in preds)]
    report.graphs_scanned += len(kept)
    if not kept:
        return

    by_order: dict[int, list[Graph]] = {}
    for g in kept:
        by_order.setdefault(g.order, []).append(g)
    for n, group in by_order.items():
        stack = np.zeros((len(group), n, n))
        for i, g in enumerate(group):
            stack[i] = g.adjacency_matrix()
        for g, vals in zip(group, eigenvalues_sym_batch(stack)):
            attach_eigenvalues(g, vals)

    checks = spec.resolved_checks()
    tol = spec.tolerances
    for g in kept:
        spectrum = spectrum_of(g, tol.zero_rel)
        g6 = None
        near = [x for x in spectrum.values
                if 0.1 * spectrum.zero_tol < abs(x) <= 10 * spectrum.zero_tol]
        if near:
            g6 = to_graph6(g)
            report.zero_review.append({"graph6": g6, "values": [fmt_float(x) for x in near]})
        for chk in checks:
            verdict = chk.func(g)
            status = verdict.status
            report.totals[chk.name][_STATUS_KEYS[status]] += 1
            if status in (Status.HOLDS, Status.NOT_APPLICABLE):
                continue
            g6 = g6 or to_graph6(g)
            entry = {"graph6": g6, "check": chk.name}
            if status is Status.EQUALITY:
                entry["family"] = verdict.family.value if verdict.family else None
                if "strict_reading" in verdict.witness:
                    entry["strict_reading"] = verdict.witness["strict_reading"]
                report.equality_cases.append(entry)
                continue
            entry["lhs"] = fmt_float(verdict.lhs)
            entry["rhs"] = fmt_float(verdict.rhs)
            if verdict.reason:
                entry["reason"] = verdict.reason
            if verdict.witness:
                entry["witness"] = dict(verdict.witness)
            entry["spectrum"] = [fmt_float(x) for x in spectrum.values]
            if status is Status.CANDIDATE:
                report.candidates.append(entry)
            else:
                report.violations.append(entry)


def _blank_report(spec: ScanSpec) -> ScanReport:
    return ScanReport(spec={}, totals={c.name: _empty_totals() for c in spec.resolved_checks()})


def _run_mask_chunk(args) -> ScanReport:
    spec, n, start, stop = args
    report = _blank_report(spec)
    _evaluate([Graph.from_edge_mask(n, mask) for mask in range(start, stop)], spec, report)
    return report


def _run_record_chunk(args) -> ScanReport:
    spec, records = args
    report = _blank_report(spec)
    graphs = []
    for lineno, text in records:
        try:
            graphs.append(parse_graph6(text))
        except Graph6Error as exc:
            if not spec.skip_errors:
                raise StreamParseError(lineno, exc) from exc
            log.warning("skipping line %d: %s", lineno, exc)
    _evaluate(graphs, spec, report)
    return report


def _tasks(spec: ScanSpec):
    size = spec.chunk_size
    if spec.orders:
        for n in spec.orders:
            total = 1 << (n * (n - 1) // 2)
            for start in range(0, total, size):
                yield _run_mask_chunk, (spec, n, start, min(start + size, total))
        return
    records = list(_records(spec.graph6))
    for start in range(0, len(records), size):
        yield _run_record_chunk, (spec, records[start:start + size])


def _warm_up() -> None:
    # compile (or load the cached) eigensolver before forking workers
    eigenvalues_sym_batch(np.zeros((1, 2, 2)))


def _apply(task):
    fn, args = task
    return fn(args)


def run_scan(spec: ScanSpec) -> ScanReport:
    """Evaluate every requested check on every graph that passes the filters."""
    spec.validate()
    started = time.perf_counter()
    _warm_up()
    report = _blank_report(spec)
    report.spec = spec.echo()
    tasks = _tasks(spec)
    if spec.jobs == 1:
        for task in tasks:
            report.merge(_apply(task))
    else:
        methods = mp.get_all_start_methods()
        ctx = mp.get_context("fork" if "fork" in methods else None)
        with ctx.Pool(spec.jobs) as pool:
            for part in pool.imap_unordered(_apply, tasks):
                report.merge(part)
    report.finalize()
    if spec.timing:
        report.wall_ms = int(round((time.perf_counter() - started) * 1000))
    return report


