"""Exact isomorphism testing and canonical forms by exhaustion, for small graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph, Permutation

ISO_MAX_N = 10
FORM_MAX_N = 8


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically least upper-triangle adjacency bit string over all relabelings."""

    n: int
    bits: str


def brute_force_isomorphism(g1: Graph, g2: Graph) -> Permutation | None:
    """A permutation mapping ``g1`` onto ``g2``, or ``None`` if they are not isomorphic."""
    if max(g1.n, g2.n) > ISO_MAX_N:
        raise OracleSizeError(f"brute-force isomorphism is capped at n={ISO_MAX_N}")
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    n = g1.n
    d1 = g1.degrees().tolist()
    d2 = g2.degrees().tolist()
    if sorted(d1) != sorted(d2):
        return None
    a1 = g1.adjacency.tolist()
    a2 = g2.adjacency.tolist()
    # high-degree nodes first: they constrain the rest the most
    order = sorted(range(n), key=lambda u: -d1[u])
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        u = order[k]
        for v in range(n):
            if used[v] or d2[v] != d1[u]:
                continue
            if any(a1[u][w] != a2[v][image[w]] for w in order[:k]):
                continue
            image[u] = v
            used[v] = True
            if extend(k + 1):
                return True
            used[v] = False
        image[u] = -1
        return False

    return Permutation(tuple(image)) if extend(0) else None


@lru_cache(maxsize=None)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def exact_canonical_form(g: Graph) -> CanonicalForm:
    if g.n > FORM_MAX_N:
        raise OracleSizeError(f"exact canonical form is capped at n={FORM_MAX_N}")
    n = g.n
    iu, ju = np.triu_indices(n, 1)
    if len(iu) == 0:
        return CanonicalForm(n, "")
    perms = _all_perms(n)
    bits = np.asarray(g.adjacency)[perms[:, iu], perms[:, ju]].astype(np.int64)
    weights = 1 << np.arange(len(iu) - 1, -1, -1, dtype=np.int64)
    best = int((bits @ weights).min())
    return CanonicalForm(n, format(best, f"0{len(iu)}b"))
