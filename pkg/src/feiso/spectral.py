"""Shortest distances, reciprocal-distance weights, Perron roots and Parry measures.

All eigen-computations are shifted power iterations on ``W + I`` started from the
all-ones vector. The shift keeps the iteration from oscillating on matrices whose
spectrum is symmetric about zero (bipartite-like structure) and leaves the
eigenvectors unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph
from .precision import resolve_dtype

TOL = 1e-13
MAX_ITER = 100_000


class ConvergenceError(ArithmeticError):
    """Power iteration did not settle within the iteration cap."""


class ReducibleMatrixError(ValueError):
    """Matrix is reducible: disconnected support or a non-positive Perron vector entry."""


@dataclass(frozen=True)
class SpectralResult:
    perron: float
    right_vec: np.ndarray
    left_vec: np.ndarray
    stationary: np.ndarray
    iterations: int


# -- distances ----------------------------------------------------------------

def _distance_stack(adj: np.ndarray) -> np.ndarray:
    """Batched Floyd-Warshall on unit weights; ``adj`` has shape ``(B, m, m)``.

    Unreachable pairs get ``m``. Seeding the non-edges with ``m`` is exact: any
    path through a surrogate entry costs more than ``m`` and never wins.
    """
    b, m, _ = adj.shape
    d = np.where(adj, 1, m).astype(np.int64)
    idx = np.arange(m)
    d[:, idx, idx] = 0
    for k in range(m):
        np.minimum(d, d[:, :, k, None] + d[:, None, k, :], out=d)
    return d


def all_pairs_shortest_distance(g: Graph) -> np.ndarray:
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    return _distance_stack(np.asarray(g.adjacency)[None])[0]


def _reciprocal_stack(adj: np.ndarray, dtype) -> np.ndarray:
    d = _distance_stack(adj).astype(dtype)
    m = adj.shape[-1]
    idx = np.arange(m)
    d[:, idx, idx] = 1
    w = 1 / d
    w[:, idx, idx] = 0
    return w


def reciprocal_distance_matrix(g: Graph, dtype=None) -> np.ndarray:
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    return _reciprocal_stack(np.asarray(g.adjacency)[None], resolve_dtype(dtype))[0]


# -- power iteration ----------------------------------------------------------

def _working(w, dtype=None) -> np.ndarray:
    w = np.asarray(w)
    if dtype is None:
        dtype = w.dtype if w.dtype in (np.float64, np.longdouble) else np.float64
    return w.astype(resolve_dtype(dtype), copy=False)


def _power_iterate(s: np.ndarray, tol: float, max_iter: int, vector_tol: float | None = None):
    """Power iteration on each matrix of the stack ``s`` (shape ``(B, m, m)``).

    Returns Rayleigh-quotient estimates, unit eigenvectors and the iteration count.
    Matrices stop updating individually once the estimate moves by at most ``tol``
    (relative). Convergence is geometric in the ratio of the two leading
    eigenvalues of the shifted matrix, so near-degenerate spectra settle slowly.
    """
    b, m, _ = s.shape
    dt = s.dtype
    x = np.full((b, m), 1 / np.sqrt(dt.type(m)), dtype=dt)
    est = np.full(b, np.nan, dtype=dt)
    active = np.arange(b)
    sa = s
    for it in range(1, max_iter + 1):
        xa = x[active]
        y = np.matmul(sa, xa[..., None])[..., 0]
        new = np.einsum("bi,bi->b", xa, y)
        xn = y / np.sqrt(np.einsum("bi,bi->b", y, y))[:, None]
        done = np.abs(new - est[active]) <= tol * np.maximum(1, np.abs(new))
        if vector_tol is not None:
            done &= np.max(np.abs(xn - xa), axis=1) <= vector_tol
        est[active] = new
        x[active] = xn
        if done.all():
            return est, x, it
        if done.any():
            active = active[~done]
            sa = sa[~done]
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


def _shifted(w: np.ndarray) -> np.ndarray:
    s = w.copy()
    idx = np.arange(w.shape[-1])
    s[..., idx, idx] += 1
    return s


def perron_stack(ws, tol: float = TOL, max_iter: int = MAX_ITER, dtype=None) -> np.ndarray:
    """Perron roots of a stack of nonnegative matrices of one size."""
    ws = _working(ws, dtype)
    if ws.ndim != 3 or ws.shape[1] != ws.shape[2]:
        raise ValueError("expected a (B, m, m) stack")
    if ws.shape[0] == 0 or ws.shape[1] == 0:
        return np.zeros(ws.shape[0], dtype=ws.dtype)
    out = np.zeros(ws.shape[0], dtype=ws.dtype)
    nonzero = ws.any(axis=(1, 2))
    if nonzero.any():
        est, _, _ = _power_iterate(_shifted(ws[nonzero]), tol, max_iter)
        out[nonzero] = est - 1
    return out


def perron(w, tol: float = TOL, max_iter: int = MAX_ITER, dtype=None):
    """Largest eigenvalue of a nonnegative square matrix (0 for the empty matrix)."""
    w = _working(w, dtype)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("matrix must be square")
    if (w < 0).any():
        raise ValueError("matrix must be nonnegative")
    return perron_stack(w[None], tol, max_iter)[0]


def is_irreducible(w) -> bool:
    """Strong connectivity of the off-diagonal support of ``w``."""
    support = np.asarray(w) > 0
    n = support.shape[0]
    if n <= 1:
        return True
    for s in (support, support.T):
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = seen.copy()
        while frontier.any():
            frontier = s[frontier].any(axis=0) & ~seen
            seen |= frontier
        if not seen.all():
            return False
    return True


def parry_stationary(w, tol: float = TOL, max_iter: int = MAX_ITER, dtype=None) -> SpectralResult:
    """Perron root, left/right Perron vectors and the node marginals of the Parry measure.

    The stationary probability of node ``i`` is ``eta_i * xi_i`` normalised to sum
    to one. Unlike :func:`perron`, the iteration also waits for the eigenvectors to
    settle, since the marginals are compared digit by digit downstream.
    """
    w = _working(w, dtype)
    n = w.shape[0]
    if w.ndim != 2 or n != w.shape[1]:
        raise ValueError("matrix must be square")
    if n < 1:
        raise ValueError("matrix must be non-empty")
    if (w < 0).any():
        raise ValueError("matrix must be nonnegative")
    if not is_irreducible(w):
        raise ReducibleMatrixError("matrix support is not strongly connected")
    s = _shifted(w)
    est_r, right, it_r = _power_iterate(s[None], tol, max_iter, vector_tol=tol)
    if np.array_equal(w, w.T):
        left, it_l = right, 0
    else:
        _, left, it_l = _power_iterate(np.ascontiguousarray(s.T)[None], tol, max_iter, vector_tol=tol)
    right, left = right[0], left[0]
    if (right <= 0).any() or (left <= 0).any():
        raise ReducibleMatrixError("Perron eigenvector has a non-positive component; matrix is reducible")
    prod = left * right
    return SpectralResult(
        perron=est_r[0] - 1,
        right_vec=right,
        left_vec=left,
        stationary=prod / prod.sum(),
        iterations=it_r + it_l,
    )


# -- subgraph energies --------------------------------------------------------

def free_energies(adjs: Sequence[np.ndarray], tol: float = TOL, max_iter: int = MAX_ITER,
                  dtype=None) -> np.ndarray:
    """Free energy of each graph given by boolean adjacency, batched by size.

    Graphs with fewer than two nodes have energy 0.
    """
    dt = resolve_dtype(dtype)
    out = np.zeros(len(adjs), dtype=dt)
    by_size: dict[int, list[int]] = {}
    for k, a in enumerate(adjs):
        m = a.shape[0]
        if m >= 2:
            by_size.setdefault(m, []).append(k)
    for m, ks in by_size.items():
        stack = np.stack([adjs[k] for k in ks])
        out[ks] = perron_stack(_reciprocal_stack(stack, dt), tol, max_iter)
    return out


def subgraph_free_energy(g: Graph, tol: float = TOL, max_iter: int = MAX_ITER, dtype=None):
    return free_energies([np.asarray(g.adjacency)], tol, max_iter, dtype)[0]
