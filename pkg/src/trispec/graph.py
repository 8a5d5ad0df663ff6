"""Simple undirected graphs on vertices ``0..n-1`` and the constructors used
throughout the package.

Adjacency is stored as one neighbour bitmask per vertex, which keeps the
structural predicates in :mod:`trispec.structure` cheap enough for exhaustive
scans over every labeled graph on seven vertices.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np


class Graph:
    """Immutable simple graph with labeled vertices ``0..order-1``.

    Derived quantities (spectrum, triangle count, ...) are memoised in a
    private cache; the graph itself never changes after construction.
    """

    __slots__ = ("_n", "_adj", "_cache")

    def __init__(self, order: int, edges: Iterable[tuple[int, int]] = ()):
        if order < 1:
            raise ValueError(f"graph order must be >= 1, got {order}")
        adj = [0] * order
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = order
        self._adj = tuple(adj)
        self._cache: dict = {}

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        """Build directly from neighbour bitmasks (no validation beyond symmetry)."""
        g = cls.__new__(cls)
        g._n = len(masks)
        g._adj = tuple(masks)
        g._cache = {}
        return g

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> Graph:
        """Decode the labeled graph whose edge set is the bitmask ``mask``.

        Bit ``k`` corresponds to the ``k``-th pair in :func:`pair_order`.
        """
        adj = [0] * n
        k = 0
        for v in range(1, n):
            for u in range(v):
                if mask >> k & 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                k += 1
        return cls.from_masks(adj)

    @classmethod
    def from_adjacency(cls, matrix) -> Graph:
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency matrix has loops")
        if not np.all((a == 0) | (a == 1)):
            raise ValueError("adjacency matrix must be 0/1")
        us, vs = np.nonzero(np.triu(a))
        return cls(a.shape[0], zip(us.tolist(), vs.tolist()))

    # -- basic accessors -------------------------------------------------

    @property
    def order(self) -> int:
        return self._n

    n = order

    @property
    def masks(self) -> tuple[int, ...]:
        return self._adj

    @property
    def size(self) -> int:
        m = self._cache.get("m")
        if m is None:
            m = sum(a.bit_count() for a in self._adj) // 2
            self._cache["m"] = m
        return m

    m = size

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        e = self._cache.get("edges")
        if e is None:
            e = frozenset(self.iter_edges())
            self._cache["edges"] = e
        return e

    def iter_edges(self):
        for u, a in enumerate(self._adj):
            a >>= u + 1
            v = u + 1
            while a:
                if a & 1:
                    yield (u, v)
                a >>= 1
                v += 1

    def neighbors(self, v: int) -> list[int]:
        a = self._adj[v]
        return [u for u in range(self._n) if a >> u & 1]

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def min_degree(self) -> int:
        return min(a.bit_count() for a in self._adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def isolated_vertices(self) -> list[int]:
        return [v for v, a in enumerate(self._adj) if a == 0]

    def edge_mask(self) -> int:
        """Inverse of :meth:`from_edge_mask`."""
        mask = 0
        k = 0
        adj = self._adj
        for v in range(1, self._n):
            row = adj[v]
            for u in range(v):
                if row >> u & 1:
                    mask |= 1 << k
                k += 1
        return mask

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        n = self._n
        a = np.zeros((n, n), dtype=dtype)
        for u, v in self.iter_edges():
            a[u, v] = a[v, u] = 1
        return a

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.iter_edges()
                 if u in index and v in index]
        return Graph(len(vertices), edges)

    def delete_vertex(self, v: int) -> Graph:
        return self.induced_subgraph([u for u in range(self._n) if u != v])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self._n, [(perm[u], perm[v]) for u, v in self.iter_edges()])

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self._adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self._n) - 1

    def components(self) -> list[list[int]]:
        left = (1 << self._n) - 1
        comps = []
        while left:
            start = left & -left
            seen = start
            frontier = start
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= self._adj[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~seen
                seen |= nxt
            comps.append([v for v in range(self._n) if seen >> v & 1])
            left &= ~seen
        return comps

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self):
        return hash((self._n, self._adj))

    def __repr__(self):
        return f"Graph(order={self._n}, edges={sorted(self.edges)})"

    def __getstate__(self):
        return (self._n, self._adj)

    def __setstate__(self, state):
        self._n, self._adj = state
        self._cache = {}


def pair_order(n: int) -> list[tuple[int, int]]:
    """Column-major upper-triangle pair order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(u, v) for v in range(1, n) for u in range(v)]


# -- constructors ----------------------------------------------------------

def empty(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for v in range(n) for u in range(v)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ValueError("both parts of K_{a,b} must be non-empty")
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.order
    return Graph(g.order + h.order,
                 list(g.iter_edges()) + [(u + off, v + off) for u, v in h.iter_edges()])


def add_isolated(g: Graph, k: int) -> Graph:
    if k < 0:
        raise ValueError("cannot add a negative number of vertices")
    return Graph(g.order + k, g.iter_edges())


def blow_up(base: Graph, sizes: Sequence[int]) -> Graph:
    """Replace vertex ``x`` of ``base`` by an independent set of ``sizes[x]``
    vertices, joining two sets completely when their base vertices are adjacent.

    New vertices are numbered class by class in base-vertex order.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) != base.order:
        raise ValueError(f"need {base.order} class sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("blow-up class sizes must all be >= 1")
    starts = np.concatenate([[0], np.cumsum(sizes)]).tolist()
    edges = []
    for x, y in base.iter_edges():
        for u in range(starts[x], starts[x + 1]):
            for v in range(starts[y], starts[y + 1]):
                edges.append((u, v))
    return Graph(starts[-1], edges)


def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    """G_{uv}: remove ``uv`` and add a new vertex ``n`` adjacent to both ends."""
    if not (0 <= u < g.order and 0 <= v < g.order) or not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    w = g.order
    edges = [e for e in g.iter_edges() if e != (min(u, v), max(u, v))]
    edges += [(u, w), (v, w)]
    return Graph(g.order + 1, edges)


def subdivided_bipartite(a: int, b: int) -> Graph:
    """S(K_{a,b}): complete bipartite graph with the edge (0, a) subdivided."""
    return subdivide_edge(complete_bipartite(a, b), 0, a)


def balanced_subdivided_bipartite(n: int) -> Graph:
    """S(K_{floor((n-1)/2), ceil((n-1)/2)}) on ``n >= 5`` vertices."""
    if n < 5:
        raise ValueError("the balanced subdivided bipartite graph needs n >= 5")
    a = (n - 1) // 2
    return subdivided_bipartite(a, n - 1 - a)


def y_graph(n: int) -> Graph:
    """Y_n: an induced path on ``n-4`` vertices with two pendant vertices
    attached to each end."""
    if n < 6:
        raise ValueError("Y_n is defined for n >= 6")
    k = n - 4
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(0, k), (0, k + 1), (k - 1, k + 2), (k - 1, k + 3)]
    return Graph(n, edges)


def star_clique_join(k: int, q: int) -> Graph:
    """K_k with every clique vertex joined to each of ``q`` further vertices."""
    if k < 1 or q < 1:
        raise ValueError("star_clique_join needs k >= 1 and q >= 1")
    edges = [(u, v) for v in range(k) for u in range(v)]
    edges += [(u, k + j) for u in range(k) for j in range(q)]
    return Graph(k + q, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


# The members of the triangle-free equality family, by name.
def p2k1() -> Graph:
    return Graph(3, [(0, 1)])


def two_p2k1() -> Graph:
    return Graph(5, [(0, 1), (2, 3)])


def p4k1() -> Graph:
    return add_isolated(path(4), 1)


def p5k1() -> Graph:
    return add_isolated(path(5), 1)


NAMED_BASES = {
    "P2K1": p2k1,
    "2P2K1": two_p2k1,
    "P4K1": p4k1,
    "P5K1": p5k1,
}
