"""Adjacency spectra.

The eigensolver is a cyclic Jacobi iteration compiled with numba. It is slower
than LAPACK for large matrices but deterministic, unconditionally stable on
symmetric input, and quick enough for the small graphs the scans enumerate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numba
import numpy as np

from .graph import Graph, subdivided_bipartite

#: off-diagonal stopping threshold, relative to the Frobenius norm
JACOBI_REL_TOL = 1e-12
#: zero classification for inertia/rank, relative to max(1, lambda_1)
ZERO_REL_TOL = 1e-8
#: allowed drift of the trace identities (sum of eigenvalues, sum of squares)
TRACE_TOL = 1e-7
#: allowed distance of sum(lambda^3)/6 from an integer
TRIANGLE_RESIDUAL_TOL = 1e-6

_MAX_SWEEPS = 100


class SpectralAccuracyError(ArithmeticError):
    """A spectral identity failed by more than its tolerance."""


@numba.njit(cache=True)
def _jacobi_inplace(a, rel_tol):
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    fro = math.sqrt(fro)
    thresh = rel_tol * fro
    for sweep in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                v = abs(a[p, q])
                if v > off:
                    off = v
        if off < thresh or off == 0.0:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


@numba.njit(cache=True)
def _jacobi_batch(stack, rel_tol, out):
    failures = 0
    for b in range(stack.shape[0]):
        a = stack[b].copy()
        if _jacobi_inplace(a, rel_tol) < 0:
            failures += 1
        d = np.empty(a.shape[0])
        for i in range(a.shape[0]):
            d[i] = a[i, i]
        d.sort()
        out[b] = d[::-1]
    return failures


def _validate_symmetric(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if np.any(np.abs(a - np.swapaxes(a, -1, -2)) > 1e-12):
        raise ValueError("matrix is not symmetric (tolerance 1e-12)")
    return a


def eigenvalues_sym(matrix) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, sorted non-increasing."""
    a = _validate_symmetric(matrix)
    if a.ndim != 2:
        raise ValueError("eigenvalues_sym takes a single matrix; use eigenvalues_sym_batch")
    return eigenvalues_sym_batch(a[None])[0]


def eigenvalues_sym_batch(stack) -> np.ndarray:
    """Row ``b`` of the result holds the sorted eigenvalues of ``stack[b]``."""
    a = np.ascontiguousarray(_validate_symmetric(stack))
    if a.ndim != 3:
        raise ValueError("expected a (batch, n, n) stack")
    out = np.empty(a.shape[:2])
    if a.shape[1] == 0:
        return out
    if _jacobi_batch(a, JACOBI_REL_TOL, out):
        raise SpectralAccuracyError("Jacobi iteration did not converge")
    return out


@dataclass(frozen=True)
class Spectrum:
    """Sorted adjacency eigenvalues with the quantities derived from them."""

    values: tuple[float, ...]
    inertia: tuple[int, int, int]
    s_plus: float
    s_minus: float
    rank: int
    zero_tol: float

    @property
    def lambda1(self) -> float:
        return self.values[0]

    @property
    def lambda2(self) -> float:
        """Second largest eigenvalue; 0.0 for a single vertex (zero padding)."""
        return self.values[1] if len(self.values) > 1 else 0.0

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def check_trace_identities(self, m: int, tol: float = TRACE_TOL) -> None:
        vals = np.asarray(self.values)
        if abs(vals.sum()) > tol:
            raise SpectralAccuracyError(f"trace {vals.sum():.3g} is not 0")
        if abs((vals ** 2).sum() - 2 * m) > tol:
            raise SpectralAccuracyError("sum of squared eigenvalues differs from 2m")
        if abs(self.s_plus + self.s_minus - 2 * m) > tol:
            raise SpectralAccuracyError("s+ + s- differs from 2m")


def spectrum_from_values(values, zero_rel: float = ZERO_REL_TOL) -> Spectrum:
    vals = tuple(float(x) for x in values)
    lam1 = vals[0] if vals else 0.0
    tau = zero_rel * max(1.0, lam1)
    pos = sum(1 for x in vals if x > tau)
    neg = sum(1 for x in vals if x < -tau)
    zero = len(vals) - pos - neg
    s_plus = sum(x * x for x in vals if x > tau)
    s_minus = sum(x * x for x in vals if x < -tau)
    return Spectrum(vals, (pos, neg, zero), s_plus, s_minus, pos + neg, tau)


def spectrum_of(g: Graph, zero_rel: float = ZERO_REL_TOL) -> Spectrum:
    """Spectrum of the 0/1 adjacency matrix of ``g`` (memoised on the graph)."""
    cache = g._cache
    vals = cache.get("eigenvalues")
    if vals is None:
        vals = cache["eigenvalues"] = eigenvalues_sym(g.adjacency_matrix())
    if zero_rel == ZERO_REL_TOL:
        spec = cache.get("spectrum")
        if spec is None:
            spec = cache["spectrum"] = spectrum_from_values(vals)
        return spec
    return spectrum_from_values(vals, zero_rel)


def attach_eigenvalues(g: Graph, values) -> None:
    """Seed the memo of ``g`` with eigenvalues computed in a batch."""
    g._cache["eigenvalues"] = values


def lambda1(g: Graph) -> float:
    return spectrum_of(g).lambda1


def rank_of(g: Graph, zero_rel: float = ZERO_REL_TOL) -> int:
    return spectrum_of(g, zero_rel).rank


def triangle_count_trace(spec: Spectrum) -> int:
    """Triangles from the cube trace: sum of lambda_i^3 over 6, rounded."""
    t = float(np.sum(np.asarray(spec.values) ** 3)) / 6.0
    r = round(t)
    if abs(t - r) >= TRIANGLE_RESIDUAL_TOL:
        raise SpectralAccuracyError(
            f"sum of cubes / 6 = {t!r} is {abs(t - r):.2e} from an integer")
    return max(int(r), 0)


# -- the subdivided complete bipartite family -----------------------------

def _poly_coeffs(s: int, t: int) -> tuple[float, ...]:
    return (1.0, 0.0, -(2 * s + 2 * t + s * t + 5), 0.0,
            4 * s + 4 * t + 3 * s * t + 5, -(2 * s + 2 * t + 2 * s * t + 2))


def char_poly_f(x: float, s: int, t: int) -> float:
    """The quintic factor of the characteristic polynomial of S(K_{s+2,t+2}).

    The full characteristic polynomial is ``x**(s+t) * char_poly_f(x, s, t)``.
    """
    acc = 0.0
    for c in _poly_coeffs(s, t):
        acc = acc * x + c
    return acc


def lambda1_subdivided_bipartite(s: int, t: int, tol: float = 1e-12) -> float:
    """Spectral radius of S(K_{s+2,t+2}) as the largest root of ``char_poly_f``.

    Bisection on ``[2, sqrt((s+2)(t+2))]``: the radius exceeds 2 because the
    graph properly contains C_5 and is below the radius of K_{s+2,t+2}.
    """
    if s < 0 or t < 0:
        raise ValueError("s and t must be non-negative")
    if s == 0 and t == 0:
        return 2.0
    lo, hi = 2.0, math.sqrt((s + 2) * (t + 2))
    flo, fhi = char_poly_f(lo, s, t), char_poly_f(hi, s, t)
    if not (flo < 0.0 < fhi):
        raise RuntimeError(
            f"no sign change of f(x,{s},{t}) on [{lo}, {hi}]: f={flo}, {fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if char_poly_f(mid, s, t) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def lambda1_subdivided_parts(a: int, b: int) -> float:
    """Spectral radius of S(K_{a,b}) for part sizes ``a, b >= 2``."""
    return lambda1_subdivided_bipartite(a - 2, b - 2)


def lambda1_explicit_subdivided(a: int, b: int) -> float:
    """The same radius via the eigensolver on the explicit graph (oracle route)."""
    return float(eigenvalues_sym(subdivided_bipartite(a, b).adjacency_matrix())[0])
