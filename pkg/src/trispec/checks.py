"""Verdict-returning checkers for the spectral triangle theorems, the
classical spectral-radius bounds and three open conjectures.

Every checker compares a left-hand side against a right-hand side in the
direction ``lhs <= rhs``; ``margin = rhs - lhs``. Proven statements can come
back ``VIOLATED`` (a bug or a counterexample); open conjectures never do and
report ``CANDIDATE`` instead.
"""
from __future__ import annotations

import enum
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Any

from . import structure as st
from .families import (
    BLOWUP_FAMILIES,
    ExtremalFamily,
    blowup_family,
    is_balanced_subdivided_bipartite,
    is_c5_plus_isolated,
    is_strict_blowup,
    recognize_extremal,
)
from .graph import Graph, star_clique_join, subdivide_edge, y_graph
from .spectra import (
    eigenvalues_sym,
    lambda1_subdivided_bipartite,
    lambda1_subdivided_parts,
    spectrum_of,
)


class Status(str, enum.Enum):
    HOLDS = "holds"
    EQUALITY = "equality"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"
    CANDIDATE = "candidate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Tolerances:
    slack: float = 1e-9       # strict comparisons
    window: float = 1e-7      # equality detection
    zero_rel: float = 1e-8    # inertia / rank zero test, times max(1, lambda1)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class CheckVerdict:
    check_id: str
    status: Status
    lhs: float | None = None
    rhs: float | None = None
    family: ExtremalFamily | None = None
    reason: str | None = None
    witness: Mapping[str, Any] = field(default_factory=dict)

    @property
    def margin(self) -> float | None:
        if self.lhs is None or self.rhs is None:
            return None
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        d = {"check": self.check_id, "status": self.status.value}
        if self.lhs is not None:
            d["lhs"] = self.lhs
            d["rhs"] = self.rhs
            d["margin"] = self.margin
        if self.family is not None:
            d["family"] = self.family.value
        if self.reason:
            d["reason"] = self.reason
        if self.witness:
            d["witness"] = dict(self.witness)
        return d


def _na(check_id: str, reason: str) -> CheckVerdict:
    return CheckVerdict(check_id, Status.NOT_APPLICABLE, reason=reason)


def _characterized(check_id: str, lhs: float, rhs: float, tol: Tolerances,
                   family: Callable[[], ExtremalFamily | None],
                   witness: dict | None = None) -> CheckVerdict:
    """Proven bound whose equality cases are a known family.

    Anything inside the equality window must belong to that family.
    """
    margin = rhs - lhs
    if margin >= tol.window:
        return CheckVerdict(check_id, Status.HOLDS, lhs, rhs, witness=witness or {})
    if margin > -tol.window:
        fam = family()
        if fam is not None:
            return CheckVerdict(check_id, Status.EQUALITY, lhs, rhs, fam,
                                witness=witness or {})
        return CheckVerdict(check_id, Status.VIOLATED, lhs, rhs,
                            reason="tight outside the extremal family",
                            witness=witness or {})
    return CheckVerdict(check_id, Status.VIOLATED, lhs, rhs, witness=witness or {})


def _plain_bound(check_id: str, lhs: float, rhs: float, tol: Tolerances,
                 conjecture: bool = False) -> CheckVerdict:
    """Bound without a named equality family."""
    margin = rhs - lhs
    if margin < -tol.slack:
        status = Status.CANDIDATE if conjecture else Status.VIOLATED
    elif abs(margin) < tol.window:
        status = Status.EQUALITY
    else:
        status = Status.HOLDS
    return CheckVerdict(check_id, status, lhs, rhs)


def _spec(g: Graph, tol: Tolerances):
    return spectrum_of(g, tol.zero_rel)


# -- triangle-free sum of squares -------------------------------------------

def _blowup_or_none(g: Graph) -> ExtremalFamily | None:
    fam = blowup_family(g)
    return fam if fam in BLOWUP_FAMILIES else None


def _sum_of_squares(check_id: str, g: Graph, tol: Tolerances) -> CheckVerdict:
    spec = _spec(g, tol)
    lhs = spec.lambda1 ** 2 + spec.lambda2 ** 2
    verdict = _characterized(check_id, lhs, float(g.size), tol, lambda: _blowup_or_none(g))
    if verdict.status is Status.EQUALITY:
        strict = is_strict_blowup(g, verdict.family)
        return CheckVerdict(verdict.check_id, verdict.status, verdict.lhs, verdict.rhs,
                            verdict.family, witness={"strict_reading": strict})
    return verdict


def check_triangle_free_sum(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """lambda1^2 + lambda2^2 <= m for triangle-free graphs of order >= 3, with
    equality exactly for blow-ups of P2+K1, 2P2+K1, P4+K1, P5+K1."""
    if g.order < 3:
        return _na("tf-sum", "order below 3")
    if st.has_triangle(g):
        return _na("tf-sum", "contains a triangle")
    return _sum_of_squares("tf-sum", g, tol)


def check_bn_conjecture(g: Graph, r: int = 2, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """lambda1^2 + lambda2^2 <= (r-1)/r * 2m for K_{r+1}-free graphs of order
    >= r+1. Proven for r = 2 (and then checked with its equality family)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if g.order < r + 1:
        return _na("bn", f"order below r+1 = {r + 1}")
    if st.clique_number(g) > r:
        return _na("bn", f"contains K_{r + 1}")
    if r == 2:
        return _sum_of_squares("bn", g, tol)
    spec = _spec(g, tol)
    lhs = spec.lambda1 ** 2 + spec.lambda2 ** 2
    return _plain_bound("bn", lhs, (r - 1) / r * 2 * g.size, tol, conjecture=True)


# -- Nosal and the squared-radius version -------------------------------------

def _p2k1_or_none(g: Graph) -> ExtremalFamily | None:
    fam = blowup_family(g)
    return fam if fam is ExtremalFamily.BLOWUP_P2K1 else None


def check_nosal(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Triangle-free graphs have lambda1 <= sqrt(m)."""
    if st.has_triangle(g):
        return _na("nosal", "contains a triangle")
    return _characterized("nosal", _spec(g, tol).lambda1, math.sqrt(g.size), tol,
                          lambda: _p2k1_or_none(g))


def check_nikiforov_sq(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """lambda1^2 >= m forces a triangle unless g is a blow-up of P2+K1."""
    if st.has_triangle(g):
        return _na("nik-sq", "contains a triangle")
    return _characterized("nik-sq", _spec(g, tol).lambda1 ** 2, float(g.size), tol,
                          lambda: _p2k1_or_none(g))


# -- spectral versions of Erdos' theorem ---------------------------------------

def _odd_triangle_free(check_id: str, g: Graph) -> CheckVerdict | None:
    if st.is_bipartite(g):
        return _na(check_id, "bipartite")
    if st.has_triangle(g):
        return _na(check_id, "contains a triangle")
    return None


def check_spectral_erdos_size(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Non-bipartite, triangle-free: lambda1 < sqrt(m-1) unless g is C5 plus
    isolated vertices."""
    na = _odd_triangle_free("erdos-size", g)
    if na:
        return na
    return _characterized(
        "erdos-size", _spec(g, tol).lambda1, math.sqrt(g.size - 1), tol,
        lambda: ExtremalFamily.C5_PLUS_ISOLATED if is_c5_plus_isolated(g) else None)


def erdos_order_threshold(n: int) -> float:
    """lambda1 of S(K_{floor((n-1)/2), ceil((n-1)/2)})."""
    a = (n - 1) // 2
    return lambda1_subdivided_parts(a, n - 1 - a)


def check_spectral_erdos_order(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Non-bipartite, triangle-free of order n: lambda1 below the radius of the
    balanced subdivided complete bipartite graph, unless g is that graph."""
    if g.order < 5:
        return _na("erdos-order", "order below 5")
    na = _odd_triangle_free("erdos-order", g)
    if na:
        return na
    fam = ExtremalFamily.SUBDIVIDED_BALANCED_BIPARTITE
    return _characterized(
        "erdos-order", _spec(g, tol).lambda1, erdos_order_threshold(g.order), tol,
        lambda: fam if is_balanced_subdivided_bipartite(g) else None)


def check_erdos_edge_bound(g: Graph, k: int = 1, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Non-bipartite with odd girth >= 2k+3: m <= ((n-(2k-1))/2)^2 + 2k-1.

    Compared exactly as 4m <= (n-(2k-1))^2 + 4(2k-1).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if st.is_bipartite(g):
        return _na("edge-bound", "bipartite")
    og = st.odd_girth(g)
    if og < 2 * k + 3:
        return _na("edge-bound", f"odd girth {og} below {2 * k + 3}")
    n, m = g.order, g.size
    bound4 = (n - (2 * k - 1)) ** 2 + 4 * (2 * k - 1)
    lhs, rhs = float(m), bound4 / 4
    if 4 * m > bound4:
        return CheckVerdict("edge-bound", Status.VIOLATED, lhs, rhs)
    if 4 * m == bound4:
        return CheckVerdict("edge-bound", Status.EQUALITY, lhs, rhs, recognize_extremal(g))
    return CheckVerdict("edge-bound", Status.HOLDS, lhs, rhs)


def check_aes_lemma(g: Graph, k: int = 2, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Non-bipartite with odd girth >= 2k+1 implies (2k+1) * delta <= 2n.

    As printed the statement fails for k = 1 (K4: delta = 3 > 8/3); the
    default k = 2 is the Andrasfai-Erdos-Sos case.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if st.is_bipartite(g):
        return _na("aes", "bipartite")
    og = st.odd_girth(g)
    if og < 2 * k + 1:
        return _na("aes", f"odd girth {og} below {2 * k + 1}")
    lhs = (2 * k + 1) * g.min_degree()
    rhs = 2 * g.order
    if lhs > rhs:
        return CheckVerdict("aes", Status.VIOLATED, float(lhs), float(rhs))
    return CheckVerdict("aes", Status.HOLDS, float(lhs), float(rhs),
                        witness={"tight": lhs == rhs} if lhs == rhs else {})


# -- Hoffman-Smith --------------------------------------------------------------

def internal_path(g: Graph, u: int, v: int) -> list[int] | None:
    """The internal path through edge ``uv``, end to end, or ``None``.

    An internal path has end vertices of degree >= 3 and inner vertices of
    degree exactly 2; the two ends may coincide.
    """
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")

    def walk(prev, cur):
        trail = [cur]
        for _ in range(g.order + 1):
            d = g.degree(cur)
            if d >= 3:
                return trail
            if d < 2:
                return None
            a, b = g.neighbors(cur)
            prev, cur = cur, (b if a == prev else a)
            if cur in (u, v) and prev not in (u, v):
                return None  # went round a cycle of degree-2 vertices
            trail.append(cur)
        return None

    left = walk(v, u)
    if left is None:
        return None
    right = walk(u, v)
    if right is None:
        return None
    return left[::-1] + right


def is_y_graph(g: Graph) -> bool:
    return g.order >= 6 and g.size == g.order - 1 and st.are_isomorphic(g, y_graph(g.order))


def check_hoffman_smith(g: Graph, u: int, v: int, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Subdividing an edge on an internal path strictly lowers lambda1, except
    in Y_n where lambda1 stays 2."""
    if not g.is_connected():
        return _na("hoffman-smith", "disconnected")
    p = internal_path(g, u, v)
    if p is None:
        return _na("hoffman-smith", f"edge ({u}, {v}) is not on an internal path")
    before = _spec(g, tol).lambda1
    after = float(eigenvalues_sym(subdivide_edge(g, u, v).adjacency_matrix())[0])
    witness = {"edge": [u, v], "path": p}
    if is_y_graph(g):
        ok = abs(after - before) < tol.slack and abs(before - 2) < tol.slack
        return CheckVerdict("hoffman-smith", Status.EQUALITY if ok else Status.VIOLATED,
                            after, before, witness={**witness, "y_graph": True})
    status = Status.HOLDS if before - after > tol.slack else Status.VIOLATED
    return CheckVerdict("hoffman-smith", status, after, before, witness=witness)


def internal_path_edges(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in g.iter_edges() if internal_path(g, u, v) is not None]


_RANK = {Status.VIOLATED: 4, Status.CANDIDATE: 3, Status.EQUALITY: 2,
         Status.HOLDS: 1, Status.NOT_APPLICABLE: 0}


def check_hoffman_smith_all(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Hoffman-Smith over every internal-path edge; reports the worst edge."""
    if not g.is_connected():
        return _na("hoffman-smith", "disconnected")
    edges = internal_path_edges(g)
    if not edges:
        return _na("hoffman-smith", "no internal path")
    verdicts = [check_hoffman_smith(g, u, v, tol) for u, v in edges]
    return max(verdicts, key=lambda vd: (_RANK[vd.status], -(vd.margin or 0.0)))


# -- subdivided complete bipartite propositions -----------------------------

def check_prop_monotone(s: int, t: int) -> CheckVerdict:
    """lambda1(S(K_{s+2,t+2})) > lambda1(S(K_{s+1,t+3})) for t >= s >= 1."""
    if not t >= s >= 1:
        raise ValueError("need t >= s >= 1")
    rhs = lambda1_subdivided_bipartite(s, t)
    lhs = lambda1_subdivided_bipartite(s - 1, t + 1)
    status = Status.HOLDS if rhs - lhs > 1e-10 else Status.VIOLATED
    return CheckVerdict("prop-monotone", status, lhs, rhs,
                        witness={"parts": [[s + 2, t + 2], [s + 1, t + 3]]})


def check_prop_balanced(n: int) -> CheckVerdict:
    """Among S(K_{s+2,t+2}) with t >= s >= 1 and s + t = n - 5, the balanced
    part sizes (floor((n-1)/2), ceil((n-1)/2)) are the unique maximiser."""
    if n < 7:
        raise ValueError("need n >= 7")
    values = {}
    for s in range(1, (n - 5) // 2 + 1):
        t = n - 5 - s
        values[(s + 2, t + 2)] = lambda1_subdivided_bipartite(s, t)
    a = (n - 1) // 2
    balanced = (a, n - 1 - a)
    best = max(values, key=values.get)
    others = [val for parts, val in values.items() if parts != balanced]
    witness = {"maximizer": list(best),
               "values": {f"{p}-{q}": val for (p, q), val in sorted(values.items())}}
    rhs = values[balanced]
    if not others:
        return CheckVerdict("prop-balanced", Status.HOLDS, None, rhs, witness=witness)
    lhs = max(others)
    status = Status.HOLDS if best == balanced and rhs - lhs > 1e-10 else Status.VIOLATED
    return CheckVerdict("prop-balanced", status, lhs, rhs, witness=witness)


# -- open conjectures -------------------------------------------------------

@lru_cache(maxsize=None)
def _star_clique_radius(k: int, q: int) -> float:
    return float(eigenvalues_sym(star_clique_join(k, q).adjacency_matrix())[0])


def check_zls(g: Graph, k: int = 1, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """If lambda1 >= lambda1(K_k joined to m/k - (k-1)/2 vertices) then g has
    every cycle length 3..2k+2, unless g is that graph. Stated only for
    "sufficiently large" m; small-m failures are recorded as candidates."""
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be a positive odd integer")
    m = g.size
    if m == 0 or m % k:
        return _na("zls", f"k={k} does not divide m={m}")
    if g.isolated_vertices():
        return _na("zls", "has isolated vertices")
    q = m // k - (k - 1) // 2
    if q < 1:
        return _na("zls", "no extremal graph for this (m, k)")
    lhs = _spec(g, tol).lambda1
    rhs = _star_clique_radius(k, q)
    if rhs - lhs >= tol.window:
        return CheckVerdict("zls", Status.HOLDS, lhs, rhs)
    if g.order == k + q and st.are_isomorphic(g, star_clique_join(k, q)):
        return CheckVerdict("zls", Status.EQUALITY, lhs, rhs, ExtremalFamily.STAR_CLIQUE_JOIN)
    missing = [t for t in range(3, 2 * k + 3) if not st.has_cycle_of_length(g, t)]
    if not missing:
        return CheckVerdict("zls", Status.HOLDS, lhs, rhs, witness={"cycles_present": True})
    return CheckVerdict("zls", Status.CANDIDATE, lhs, rhs,
                        witness={"missing_cycle_lengths": missing,
                                 "below_size_regime": m < 10})


def check_efgw(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """Connected graphs: min(s+, s-) >= n - 1 (compared as n-1 <= min)."""
    if not g.is_connected():
        return _na("efgw", "disconnected")
    spec = _spec(g, tol)
    return _plain_bound("efgw", float(g.order - 1), min(spec.s_plus, spec.s_minus), tol,
                        conjecture=True)


# -- classical bounds -------------------------------------------------------

def classical_bounds(g: Graph, tol: Tolerances = DEFAULT_TOL) -> dict[str, CheckVerdict]:
    """Stanley, Hong, Wilf and Nikiforov upper bounds on lambda1."""
    lam = _spec(g, tol).lambda1
    n, m = g.order, g.size
    w = st.clique_number(g)
    out = {
        "stanley": _plain_bound("classical.stanley", lam, 0.5 * (math.sqrt(8 * m + 1) - 1), tol),
        "wilf": _plain_bound("classical.wilf", lam, (w - 1) / w * n, tol),
        "nikiforov": _plain_bound("classical.nikiforov", lam,
                                  math.sqrt(2 * (w - 1) * m / w), tol),
    }
    if g.min_degree() >= 1:
        out["hong"] = _plain_bound("classical.hong", lam, math.sqrt(2 * m - n + 1), tol)
    else:
        out["hong"] = _na("classical.hong", "has isolated vertices")
    return out


def check_classical(g: Graph, tol: Tolerances = DEFAULT_TOL) -> CheckVerdict:
    """The four classical bounds folded into one verdict (worst status wins)."""
    parts = classical_bounds(g, tol)
    applied = [v for v in parts.values() if v.status is not Status.NOT_APPLICABLE]
    worst = max(applied, key=lambda v: (_RANK[v.status], -v.margin))
    return CheckVerdict("classical", worst.status, worst.lhs, worst.rhs,
                        witness={name: v.status.value for name, v in sorted(parts.items())})


# -- registry ----------------------------------------------------------------

#: id -> (checker, parameter name, default, is an open conjecture)
GRAPH_CHECKS: dict[str, tuple[Callable, str | None, int | None]] = {
    "bn": (check_bn_conjecture, "r", 2),
    "tf-sum": (check_triangle_free_sum, None, None),
    "nosal": (check_nosal, None, None),
    "nik-sq": (check_nikiforov_sq, None, None),
    "erdos-size": (check_spectral_erdos_size, None, None),
    "erdos-order": (check_spectral_erdos_order, None, None),
    "edge-bound": (check_erdos_edge_bound, "k", 1),
    "aes": (check_aes_lemma, "k", 2),
    "hoffman-smith": (check_hoffman_smith_all, None, None),
    "zls": (check_zls, "k", 1),
    "efgw": (check_efgw, None, None),
    "classical": (check_classical, None, None),
}

PARAMETER_CHECKS = {"prop-monotone", "prop-balanced"}

CHECK_IDS = tuple(GRAPH_CHECKS) + tuple(sorted(PARAMETER_CHECKS))


def is_conjecture(name: str) -> bool:
    base, _, arg = name.partition(":")
    if base in ("zls", "efgw"):
        return True
    return base == "bn" and arg not in ("", "2")


@dataclass(frozen=True)
class ResolvedCheck:
    """A graph check with its parameter bound, named canonically (e.g. ``aes:2``)."""

    name: str
    func: Callable[[Graph], CheckVerdict]
    conjecture: bool


def resolve_check(spec: str, tol: Tolerances = DEFAULT_TOL) -> ResolvedCheck:
    base, sep, arg = spec.strip().partition(":")
    if base not in GRAPH_CHECKS:
        raise KeyError(f"unknown graph check {spec!r}; known: {', '.join(GRAPH_CHECKS)}")
    func, pname, default = GRAPH_CHECKS[base]
    if pname is None:
        if sep:
            raise ValueError(f"check {base!r} takes no parameter")
        return ResolvedCheck(base, partial(func, tol=tol), False)
    value = int(arg) if sep else default
    name = f"{base}:{value}"
    # validate parameters eagerly
    if base == "bn" and value < 2:
        raise ValueError("bn needs r >= 2")
    if base in ("edge-bound", "aes") and value < 1:
        raise ValueError(f"{base} needs k >= 1")
    if base == "zls" and (value < 1 or value % 2 == 0):
        raise ValueError("zls needs an odd k >= 1")
    return ResolvedCheck(name, partial(func, **{pname: value}, tol=tol), is_conjecture(name))
