"""Refined weight matrix of a graph and its canonical number.

Every pair ``(i, j)``, diagonal included, receives

    1/d(i, j) + NH(i) + NH(j) + SN(i, j) + UN(i, j)

where NH, SN and UN are the free energies of the neighbourhood, shared-neighbours
and union-neighbours subgraphs. The distance term is 0 on the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .precision import resolve_dtype
from .spectral import MAX_ITER, TOL, _reciprocal_stack, free_energies, perron, perron_stack


@dataclass(frozen=True)
class RefinedMatrix:
    base: np.ndarray
    nh_table: np.ndarray
    sn_table: np.ndarray
    un_table: np.ndarray

    @property
    def n(self) -> int:
        return self.base.shape[0]


def refine(g: Graph, tol: float = TOL, max_iter: int = MAX_ITER, dtype=None) -> RefinedMatrix:
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    dt = resolve_dtype(dtype)
    n = g.n
    a = np.asarray(g.adjacency)

    # Identical node sets give identical subgraphs; compute each distinct set once.
    sets: dict[bytes, int] = {}
    adjs: list[np.ndarray] = []

    def slot(mask: np.ndarray) -> int:
        key = mask.tobytes()
        k = sets.get(key)
        if k is None:
            idx = np.flatnonzero(mask)
            k = sets[key] = len(adjs)
            adjs.append(a[np.ix_(idx, idx)])
        return k

    nh_slot = [slot(a[i]) for i in range(n)]
    iu, ju = np.triu_indices(n, 1)
    sn_slot = [slot(a[i] & a[j]) for i, j in zip(iu, ju)]
    un_slot = [slot(a[i] | a[j]) for i, j in zip(iu, ju)]

    energy = free_energies(adjs, tol, max_iter, dt)
    nh = energy[nh_slot]
    sn = np.zeros((n, n), dtype=dt)
    un = np.zeros((n, n), dtype=dt)
    sn[iu, ju] = sn[ju, iu] = energy[sn_slot]
    un[iu, ju] = un[ju, iu] = energy[un_slot]
    # N(i) & N(i) == N(i) | N(i) == N(i)
    diag = np.arange(n)
    sn[diag, diag] = nh
    un[diag, diag] = nh

    # each summand is symmetric, so the sum is symmetric bit for bit
    base = _reciprocal_stack(a[None], dt)[0] + (nh[:, None] + nh[None, :]) + sn + un
    for arr in (base, nh, sn, un):
        arr.flags.writeable = False
    return RefinedMatrix(base, nh, sn, un)


def canonical_number(g: Graph, tol: float = TOL, max_iter: int = MAX_ITER, dtype=None):
    return perron(refine(g, tol, max_iter, dtype).base, tol, max_iter)


def _base(r) -> np.ndarray:
    return r.base if isinstance(r, RefinedMatrix) else np.asarray(r)


def overlay_node_weights(r: RefinedMatrix, weights) -> np.ndarray:
    """Spread each node's weight onto every entry of its row and column.

    ``M[i, j] = base[i, j] + w[i] + w[j]``; the diagonal gets ``2 w[i]``.
    """
    base = _base(r)
    w = np.asarray(weights, dtype=base.dtype)
    if w.shape != (base.shape[0],):
        raise ValueError(f"expected {base.shape[0]} node weights, got shape {w.shape}")
    return base + (w[:, None] + w[None, :])


def weighted_canonical_number(r: RefinedMatrix, weights, tol: float = TOL, max_iter: int = MAX_ITER):
    return perron(overlay_node_weights(r, weights), tol, max_iter)


def weighted_canonical_numbers(r: RefinedMatrix, weight_rows, tol: float = TOL,
                               max_iter: int = MAX_ITER) -> np.ndarray:
    """:func:`weighted_canonical_number` for each row of ``weight_rows``, in one batch."""
    base = _base(r)
    w = np.asarray(weight_rows, dtype=base.dtype)
    if w.ndim != 2 or w.shape[1] != base.shape[0]:
        raise ValueError("weight_rows must have shape (k, n)")
    return perron_stack(base[None] + (w[:, :, None] + w[:, None, :]), tol, max_iter)
