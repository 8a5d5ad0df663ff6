"""Recognisers for the extremal graph families of the triangle theorems."""
from __future__ import annotations

import enum
from functools import lru_cache

from .graph import (
    NAMED_BASES,
    Graph,
    balanced_subdivided_bipartite,
    path,
    star_clique_join,
)
from .structure import are_isomorphic, twin_quotient


class ExtremalFamily(str, enum.Enum):
    BLOWUP_P2K1 = "BlowupP2K1"
    BLOWUP_2P2K1 = "Blowup2P2K1"
    BLOWUP_P4K1 = "BlowupP4K1"
    BLOWUP_P5K1 = "BlowupP5K1"
    C5_PLUS_ISOLATED = "C5PlusIsolated"
    SUBDIVIDED_BALANCED_BIPARTITE = "SubdividedBalancedBipartite"
    STAR_CLIQUE_JOIN = "StarCliqueJoin"

    def __str__(self):
        return self.value


#: the four bases whose blow-ups attain lambda1^2 + lambda2^2 = m
BLOWUP_FAMILIES = (
    ExtremalFamily.BLOWUP_P2K1,
    ExtremalFamily.BLOWUP_2P2K1,
    ExtremalFamily.BLOWUP_P4K1,
    ExtremalFamily.BLOWUP_P5K1,
)

# bases with their isolated vertex removed
_CORES = {
    ExtremalFamily.BLOWUP_P2K1: path(2),
    ExtremalFamily.BLOWUP_2P2K1: Graph(4, [(0, 1), (2, 3)]),
    ExtremalFamily.BLOWUP_P4K1: path(4),
    ExtremalFamily.BLOWUP_P5K1: path(5),
}


def _quotient_core(g: Graph) -> tuple[Graph | None, bool]:
    """Twin quotient with its (at most one) isolated class removed, and
    whether such an isolated class was present."""
    q = twin_quotient(g).quotient
    iso = q.isolated_vertices()
    if not iso:
        return q, False
    if q.order == 1:
        return None, True
    return q.delete_vertex(iso[0]), True


def blowup_family(g: Graph) -> ExtremalFamily | None:
    """Which member of {P2+K1, 2P2+K1, P4+K1, P5+K1} ``g`` is a blow-up of.

    Permissive reading: a class may be empty, so the K1 part may be absent
    and an edgeless graph counts as a degenerate blow-up of P2+K1.
    """
    core, _ = _quotient_core(g)
    if core is None:
        return ExtremalFamily.BLOWUP_P2K1
    if core.order > 5 or core.order < 2:
        return None
    for fam, target in _CORES.items():
        if core.order == target.order and are_isomorphic(core, target):
            return fam
    return None


def is_strict_blowup(g: Graph, family: ExtremalFamily) -> bool:
    """Blow-up with every class non-empty (isolated vertices present)."""
    core, had_isolated = _quotient_core(g)
    if core is None or not had_isolated:
        return False
    target = _CORES.get(family)
    return target is not None and are_isomorphic(core, target)


def is_c5_plus_isolated(g: Graph) -> bool:
    if g.size != 5:
        return False
    active = [v for v in range(g.order) if g.degree(v)]
    if len(active) != 5 or any(g.degree(v) != 2 for v in active):
        return False
    sub = g.induced_subgraph(active)
    return sub.is_connected()


@lru_cache(maxsize=None)
def _balanced_target(n: int) -> Graph:
    return balanced_subdivided_bipartite(n)


def is_balanced_subdivided_bipartite(g: Graph) -> bool:
    """g is isomorphic to S(K_{floor((n-1)/2), ceil((n-1)/2)}), n = order."""
    n = g.order
    if n < 5:
        return False
    a = (n - 1) // 2
    if g.size != a * (n - 1 - a) + 1:
        return False
    return are_isomorphic(g, _balanced_target(n))


def star_clique_parameters(g: Graph) -> tuple[int, int] | None:
    """(k, q) if ``g`` is isomorphic to ``star_clique_join(k, q)``."""
    n, m = g.order, g.size
    for k in range(1, n):
        q = n - k
        if k * (k - 1) // 2 + k * q == m and are_isomorphic(g, _star_clique(k, q)):
            return k, q
    return None


@lru_cache(maxsize=None)
def _star_clique(k: int, q: int) -> Graph:
    return star_clique_join(k, q)


def in_family(g: Graph, family: ExtremalFamily) -> bool:
    if family in BLOWUP_FAMILIES:
        return blowup_family(g) is family
    if family is ExtremalFamily.C5_PLUS_ISOLATED:
        return is_c5_plus_isolated(g)
    if family is ExtremalFamily.SUBDIVIDED_BALANCED_BIPARTITE:
        return is_balanced_subdivided_bipartite(g)
    if family is ExtremalFamily.STAR_CLIQUE_JOIN:
        return star_clique_parameters(g) is not None
    raise ValueError(f"unknown family {family!r}")


def recognize_extremal(g: Graph) -> ExtremalFamily | None:
    """First matching family, in the order blow-ups, C5 (+ isolated),
    balanced subdivided bipartite, star-clique join."""
    fam = blowup_family(g)
    if fam is not None:
        return fam
    if is_c5_plus_isolated(g):
        return ExtremalFamily.C5_PLUS_ISOLATED
    if is_balanced_subdivided_bipartite(g):
        return ExtremalFamily.SUBDIVIDED_BALANCED_BIPARTITE
    if star_clique_parameters(g) is not None:
        return ExtremalFamily.STAR_CLIQUE_JOIN
    return None


def base_graph(family: ExtremalFamily) -> Graph:
    """Base graph of a blow-up family (with its isolated vertex)."""
    names = {
        ExtremalFamily.BLOWUP_P2K1: "P2K1",
        ExtremalFamily.BLOWUP_2P2K1: "2P2K1",
        ExtremalFamily.BLOWUP_P4K1: "P4K1",
        ExtremalFamily.BLOWUP_P5K1: "P5K1",
    }
    if family not in names:
        raise ValueError(f"{family} is not a blow-up family")
    return NAMED_BASES[names[family]]()


__all__ = [
    "BLOWUP_FAMILIES",
    "ExtremalFamily",
    "base_graph",
    "blowup_family",
    "in_family",
    "is_balanced_subdivided_bipartite",
    "is_c5_plus_isolated",
    "is_strict_blowup",
    "recognize_extremal",
    "star_clique_parameters",
]
