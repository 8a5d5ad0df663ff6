"""Exact structural predicates on small graphs, all bitmask based."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


def _memo(g: Graph, key: str, fn):
    cache = g._cache
    try:
        return cache[key]
    except KeyError:
        val = cache[key] = fn(g)
        return val


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- triangles ---------------------------------------------------------------

def _triangles(g: Graph) -> int:
    adj = g.masks
    total = 0
    for u, a in enumerate(adj):
        higher = a >> (u + 1) << (u + 1)
        for v in _bits(higher):
            total += (adj[v] & higher).bit_count()
    # each triangle u<v<w is counted once at (u, v) and once at (u, w)
    return total // 2


def triangle_count_direct(g: Graph) -> int:
    """Number of vertex triples inducing K_3."""
    return _memo(g, "triangles", _triangles)


def has_triangle(g: Graph) -> bool:
    cache = g._cache
    if "triangles" in cache:
        return cache["triangles"] > 0
    adj = g.masks
    for u, a in enumerate(adj):
        for v in _bits(a >> (u + 1) << (u + 1)):
            if adj[v] & a:
                return True
    return False


# -- bipartiteness and odd girth -------------------------------------------

def _coloring(g: Graph):
    n = g.order
    adj = g.masks
    color = [-1] * n
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            cx = color[x]
            for y in _bits(adj[x]):
                if color[y] < 0:
                    color[y] = 1 - cx
                    stack.append(y)
                elif color[y] == cx:
                    return None
    return tuple(color)


def two_coloring(g: Graph) -> tuple[int, ...] | None:
    """A proper 2-colouring (0/1 per vertex) or ``None`` if ``g`` has an odd cycle."""
    return _memo(g, "coloring", _coloring)


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def _odd_girth(g: Graph):
    if is_bipartite(g):
        return None
    if has_triangle(g):
        return 3
    n = g.order
    adj = g.masks
    best = 2 * n + 1
    for s in range(n):
        # an edge inside one BFS layer at depth d closes an odd walk of
        # length 2d+1; from a vertex on a shortest odd cycle this is exact
        dist = [-1] * n
        dist[s] = 0
        layer = [s]
        d = 0
        while layer and 2 * d + 1 < best:
            layer_mask = 0
            for x in layer:
                layer_mask |= 1 << x
            if any(adj[x] & layer_mask for x in layer):
                best = 2 * d + 1
                break
            nxt = []
            for x in layer:
                for y in _bits(adj[x]):
                    if dist[y] < 0:
                        dist[y] = d + 1
                        nxt.append(y)
            layer = nxt
            d += 1
    return best


def odd_girth(g: Graph) -> int | None:
    """Length of a shortest odd cycle, or ``None`` for bipartite graphs."""
    return _memo(g, "odd_girth", _odd_girth)


# -- cliques and cycles --------------------------------------------------------

def _clique_number(g: Graph) -> int:
    adj = g.masks
    best = 1 if g.order else 0

    def expand(size, cand):
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            expand(size + 1, cand & adj[v])
            cand ^= low

    expand(0, (1 << g.order) - 1)
    return best


def clique_number(g: Graph) -> int:
    """Exact clique number by branch and bound over candidate bitmasks."""
    return _memo(g, "omega", _clique_number)


def has_clique(g: Graph, size: int) -> bool:
    return clique_number(g) >= size


def has_cycle_of_length(g: Graph, t: int) -> bool:
    """True iff ``g`` contains a (not necessarily induced) cycle of length ``t``."""
    if t < 3:
        raise ValueError("cycle length must be >= 3")
    n = g.order
    if t > n or g.size < t:
        return False
    adj = g.masks
    if t == 3:
        return has_triangle(g)

    # each cycle is found from its smallest vertex s, using only vertices > s
    def extend(v, depth, used, s, allowed):
        if depth == t:
            return bool(adj[v] >> s & 1)
        for w in _bits(adj[v] & allowed & ~used):
            if extend(w, depth + 1, used | (1 << w), s, allowed):
                return True
        return False

    for s in range(n - t + 1):
        allowed = ((1 << n) - 1) >> (s + 1) << (s + 1)
        if (adj[s] & allowed).bit_count() < 2:
            continue
        for w in _bits(adj[s] & allowed):
            if extend(w, 2, (1 << s) | (1 << w), s, allowed):
                return True
    return False


# -- isomorphism -----------------------------------------------------------

def _joint_refine(g: Graph, h: Graph):
    """Colour refinement run on both graphs with a shared palette.

    Returns per-vertex colours for each graph, or ``None`` as soon as the
    colour multisets differ (which proves non-isomorphism).
    """
    ag, ah = g.masks, h.masks
    cg = [a.bit_count() for a in ag]
    ch = [a.bit_count() for a in ah]
    nclasses = len(set(cg))
    for _ in range(g.order):
        sg = [(cg[v], tuple(sorted(cg[u] for u in _bits(ag[v])))) for v in range(g.order)]
        sh = [(ch[v], tuple(sorted(ch[u] for u in _bits(ah[v])))) for v in range(h.order)]
        if sorted(sg) != sorted(sh):
            return None
        palette = {sig: i for i, sig in enumerate(sorted(set(sg)))}
        cg = [palette[x] for x in sg]
        ch = [palette[x] for x in sh]
        if len(palette) == nclasses:
            break
        nclasses = len(palette)
    return cg, ch


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test with degree-refinement pruning.

    Intended for small graphs; fine for the sparse extremal targets used in
    recognition at moderately larger orders as well.
    """
    if g.order != h.order or g.size != h.size:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    n = g.order
    if n <= 1:
        return True
    refined = _joint_refine(g, h)
    if refined is None:
        return False
    key_g, key_h = refined
    ag, ah = g.masks, h.masks

    # map vertices of g in order of rarest class first, then by adjacency to
    # already-mapped vertices (keeps the search connected)
    counts: dict = {}
    for k in key_g:
        counts[k] = counts.get(k, 0) + 1
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        best = min(remaining,
                   key=lambda v: (-(ag[v] & placed).bit_count(), counts[key_g[v]], v))
        order.append(best)
        placed |= 1 << best
        remaining.discard(best)

    by_key_h: dict = {}
    for v in range(n):
        by_key_h.setdefault(key_h[v], []).append(v)

    mapping = [-1] * n
    used = 0

    def search(i):
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in by_key_h.get(key_g[v], ()):
            if used >> w & 1:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (ag[v] >> u & 1) != (ah[w] >> mapping[u] & 1):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used |= 1 << w
            if search(i + 1):
                return True
            used &= ~(1 << w)
            mapping[v] = -1
        return False

    return search(0)


# -- twins -------------------------------------------------------------------

@dataclass(frozen=True)
class TwinQuotient:
    """Classes of vertices with identical open neighbourhoods and the graph on
    the classes. Class ``i`` of ``classes`` is vertex ``i`` of ``quotient``."""

    quotient: Graph
    classes: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def _twin_quotient(g: Graph) -> TwinQuotient:
    groups: dict[int, list[int]] = {}
    for v, a in enumerate(g.masks):
        groups.setdefault(a, []).append(v)
    classes = sorted((tuple(vs) for vs in groups.values()), key=lambda c: c[0])
    rep = [c[0] for c in classes]
    edges = [(i, j) for j in range(len(rep)) for i in range(j)
             if g.has_edge(rep[i], rep[j])]
    return TwinQuotient(Graph(len(classes), edges), tuple(classes))


def twin_quotient(g: Graph) -> TwinQuotient:
    return _memo(g, "twins", _twin_quotient)
