"""Weak majorization and doubly substochastic matrices.

Conventions: ``y`` is the weakly majorized vector and ``x`` the dominating
one, ``y <_w x``; the transfer matrix ``A`` satisfies ``y = A @ x``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

PREFIX_TOL = 1e-12


def _nonneg(v, name: str) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"{name} must be a vector")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    if np.any(a < 0):
        raise ValueError(f"{name} has negative entries")
    return a


def sorted_desc(v) -> np.ndarray:
    return np.sort(np.asarray(v, dtype=float))[::-1]


def _is_desc(a: np.ndarray) -> bool:
    return bool(np.all(np.diff(a) <= 0))


@dataclass(frozen=True)
class MajorizationCertificate:
    """Prefix sums of the sorted views; ``weak`` is ``y <_w x``."""

    prefix_x: tuple[float, ...]
    prefix_y: tuple[float, ...]
    weak: bool
    strong: bool


def weak_majorization(y, x, tol: float = PREFIX_TOL) -> MajorizationCertificate:
    """Decide ``y <_w x`` by comparing prefix sums of the sorted vectors."""
    y = _nonneg(y, "y")
    x = _nonneg(x, "x")
    if y.shape != x.shape:
        raise ValueError(f"length mismatch: {y.size} vs {x.size} (zero-pad the shorter)")
    px = np.cumsum(sorted_desc(x))
    py = np.cumsum(sorted_desc(y))
    weak = bool(np.all(py <= px + tol))
    total = px[-1] if px.size else 0.0
    strong = weak and (px.size == 0 or bool(abs(py[-1] - total) <= tol * max(1.0, total)))
    return MajorizationCertificate(tuple(px.tolist()), tuple(py.tolist()), weak, strong)


def is_doubly_substochastic(a, tol: float = 1e-12) -> bool:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        return True
    return bool(np.all(a >= -tol)
                and np.all(a.sum(axis=1) <= 1 + tol)
                and np.all(a.sum(axis=0) <= 1 + tol))


def is_doubly_stochastic(a, tol: float = 1e-12) -> bool:
    a = np.asarray(a, dtype=float)
    return (is_doubly_substochastic(a, tol)
            and bool(np.all(np.abs(a.sum(axis=1) - 1) <= tol))
            and bool(np.all(np.abs(a.sum(axis=0) - 1) <= tol)))


# -- weak-permutation decomposition -----------------------------------------

@dataclass(frozen=True)
class WeakPermutationMatrix:
    """0/1 matrix with at most one 1 per row and column.

    ``row_of`` maps column ``j`` to the row of its 1, or -1 for an empty column.
    """

    size: int
    row_of: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_of) != self.size:
            raise ValueError("row_of must have one entry per column")
        rows = [r for r in self.row_of if r >= 0]
        if len(rows) != len(set(rows)) or any(r >= self.size for r in rows):
            raise ValueError("not a weak-permutation: repeated or out-of-range row")

    @property
    def mapping(self) -> dict[int, int]:
        return {j: r for j, r in enumerate(self.row_of) if r >= 0}

    def to_array(self) -> np.ndarray:
        p = np.zeros((self.size, self.size))
        for j, r in enumerate(self.row_of):
            if r >= 0:
                p[r, j] = 1.0
        return p

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(self.size)
        for j, r in enumerate(self.row_of):
            if r >= 0:
                out[r] = x[j]
        return out


@dataclass(frozen=True)
class SubstochasticDecomposition:
    terms: tuple[tuple[float, WeakPermutationMatrix], ...]
    reconstruction_error: float

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.terms])

    def reconstruct(self) -> np.ndarray:
        n = self.terms[0][1].size if self.terms else 0
        out = np.zeros((n, n))
        for w, p in self.terms:
            out += w * p.to_array()
        return out


def _perfect_matching(support: np.ndarray) -> list[int] | None:
    """Kuhn's augmenting paths; columns in ascending order. Returns the row
    matched to each column, or ``None`` if no perfect matching exists."""
    n = support.shape[0]
    row_of = [-1] * n
    col_of = [-1] * n
    nbrs = [np.flatnonzero(support[:, j]).tolist() for j in range(n)]

    def augment(j, seen):
        for i in nbrs[j]:
            if seen[i]:
                continue
            seen[i] = True
            if col_of[i] < 0 or augment(col_of[i], seen):
                row_of[j] = i
                col_of[i] = j
                return True
        return False

    for j in range(n):
        if not augment(j, [False] * n):
            return None
    return row_of


def birkhoff_terms(b: np.ndarray, eps: float = 1e-14) -> list[tuple[float, list[int]]]:
    """Greedy Birkhoff extraction for a doubly stochastic ``b``."""
    b = np.array(b, dtype=float)
    n = b.shape[0]
    cols = np.arange(n)
    terms = []
    remaining = 1.0
    while remaining > eps * n:
        support = b > eps
        row_of = _perfect_matching(support)
        if row_of is None:
            raise RuntimeError("no perfect matching on the support of a doubly "
                               "stochastic matrix (numerical breakdown)")
        rows = np.asarray(row_of)
        w = float(b[rows, cols].min())
        w = min(w, remaining)
        b[rows, cols] -= w
        b[b < eps] = 0.0
        remaining -= w
        terms.append((w, row_of))
    return terms


def decompose_substochastic(a) -> SubstochasticDecomposition:
    """Convex combination of weak-permutation matrices equal to ``a``.

    ``a`` is embedded in the doubly stochastic ``[[A, Dr], [Dc, A.T]]`` with
    ``Dr = diag(1 - row sums)``, ``Dc = diag(1 - column sums)``; each
    permutation of the Birkhoff decomposition restricted to the top-left block
    is a weak-permutation matrix.
    """
    a = np.asarray(a, dtype=float)
    if not is_doubly_substochastic(a, 1e-9):
        raise ValueError("matrix is not doubly substochastic (tolerance 1e-9)")
    n = a.shape[0]
    a = np.clip(a, 0.0, None)
    b = np.zeros((2 * n, 2 * n))
    b[:n, :n] = a
    b[n:, n:] = a.T
    b[:n, n:] = np.diag(np.clip(1.0 - a.sum(axis=1), 0.0, None))
    b[n:, :n] = np.diag(np.clip(1.0 - a.sum(axis=0), 0.0, None))

    merged: dict[tuple[int, ...], float] = {}
    for w, row_of in birkhoff_terms(b):
        key = tuple(r if r < n else -1 for r in row_of[:n])
        merged[key] = merged.get(key, 0.0) + w
    total = sum(merged.values())
    terms = tuple((w / total, WeakPermutationMatrix(n, key))
                  for key, w in sorted(merged.items(), key=lambda kv: (-kv[1], kv[0])))
    recon = np.zeros((n, n))
    for w, p in terms:
        recon += w * p.to_array()
    err = float(np.abs(recon - a).max()) if n else 0.0
    return SubstochasticDecomposition(terms, err)


# -- the transfer matrix y = A x ---------------------------------------------

def lift_to_majorized(y, x) -> np.ndarray:
    """Smallest raise ``z >= y`` with ``z < x`` (equal totals).

    The bottom of ``y`` is water-filled to a level ``c``: ``z_i = max(y_i, c)``.
    Among all ``z >= y`` with the target total this one is majorized by every
    other, so it is majorized by ``x`` whenever any lift is.
    """
    y = np.asarray(y, dtype=float)
    target = float(np.sum(x))
    deficit = target - float(y.sum())
    if deficit <= 0:
        return y.copy()
    n = y.size
    # raise the tail y[j:] to a common level c, descending j until the level
    # fits under y[j-1]; each c is a weighted mean of y[j] and the previous
    # level, so c > y[j] holds automatically
    head = np.concatenate([[0.0], np.cumsum(y)])
    for j in range(n - 1, -1, -1):
        c = (target - head[j]) / (n - j)
        if j == 0 or c <= y[j - 1]:
            z = y.copy()
            z[j:] = c
            return z
    raise AssertionError("unreachable")


def t_transform_chain(x, z, tol: float = 1e-15) -> np.ndarray:
    """Doubly stochastic ``T`` with ``T @ x = z`` for sorted ``z < x``.

    Product of at most n-1 T-transforms ``t I + (1-t) Q_{jk}``: ``j`` is the
    largest index with ``x_j > z_j`` and ``k`` the smallest index after it
    with ``x_k < z_k``.
    """
    cur = np.array(x, dtype=float)
    z = np.asarray(z, dtype=float)
    n = cur.size
    scale = max(1.0, float(np.abs(cur).max(initial=0.0)))
    eps = tol * scale * max(n, 1)
    total = np.eye(n)
    for _ in range(2 * n):
        above = np.flatnonzero(cur - z > eps)
        if above.size == 0:
            break
        j = int(above[-1])
        below = np.flatnonzero((z - cur > eps) & (np.arange(n) > j))
        if below.size == 0:
            break
        k = int(below[0])
        delta = min(cur[j] - z[j], z[k] - cur[k])
        gap = cur[j] - cur[k]
        s = delta / gap  # weight on the swap
        step = np.eye(n)
        step[j, j] = step[k, k] = 1.0 - s
        step[j, k] = step[k, j] = s
        cur = step @ cur
        total = step @ total
    return total


def transfer_matrix(y, x) -> np.ndarray:
    """Doubly substochastic ``A`` with ``A @ x = y`` for sorted ``y <_w x``."""
    y = _nonneg(y, "y")
    x = _nonneg(x, "x")
    if y.shape != x.shape:
        raise ValueError("y and x must have equal length")
    if not (_is_desc(y) and _is_desc(x)):
        raise ValueError("y and x must be sorted non-increasing")
    if not weak_majorization(y, x).weak:
        raise ValueError("y is not weakly majorized by x")
    if np.array_equal(y, x):
        return np.eye(x.size)
    z = lift_to_majorized(y, x)
    t = t_transform_chain(x, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.where(z > 0, y / np.where(z > 0, z, 1.0), 0.0)
    return np.minimum(d, 1.0)[:, None] * t


# -- norms ---------------------------------------------------------------------

def p_norm(x, p: float) -> float:
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    x = _nonneg(x, "x")
    if x.size == 0:
        return 0.0
    return float(np.sum(x ** p) ** (1.0 / p))


class NormVerdict(str, enum.Enum):
    STRICT = "strict"
    EQUAL_IDENTICAL = "equal-and-identical"
    VIOLATION = "violation"


def verify_norm_monotonicity(y, x, p: float) -> NormVerdict:
    """Check ``||y||_p <= ||x||_p`` for sorted ``y <_w x``, with equality
    only when ``y == x``."""
    y = _nonneg(y, "y")
    x = _nonneg(x, "x")
    if y.shape != x.shape:
        raise ValueError("y and x must have equal length")
    if not (_is_desc(y) and _is_desc(x)):
        raise ValueError("y and x must be sorted non-increasing")
    if not weak_majorization(y, x).weak:
        raise ValueError("y is not weakly majorized by x")
    ny, nx = p_norm(y, p), p_norm(x, p)
    if ny > nx + 1e-12:
        return NormVerdict.VIOLATION
    if abs(nx - ny) <= 1e-9:
        if np.allclose(x, y, rtol=0.0, atol=1e-9):
            return NormVerdict.EQUAL_IDENTICAL
        return NormVerdict.VIOLATION
    return NormVerdict.STRICT
