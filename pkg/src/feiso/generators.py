"""Named graphs and seeded random graphs used by the experiments and tests."""

from __future__ import annotations

import itertools

import numpy as np

from .graph import Graph


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def rook_graph(k: int = 4) -> Graph:
    """k x k rook's graph; for k = 4 this is one of the two SRG(16,6,2,2)."""
    cells = [(r, c) for r in range(k) for c in range(k)]
    return Graph.from_edges(
        k * k,
        ((u, v) for u, v in itertools.combinations(range(k * k), 2)
         if cells[u][0] == cells[v][0] or cells[u][1] == cells[v][1]),
    )


def shrikhande_graph() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    steps = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    cells = [(r, c) for r in range(4) for c in range(4)]
    return Graph.from_edges(
        16,
        ((u, v) for u, v in itertools.combinations(range(16), 2)
         if ((cells[v][0] - cells[u][0]) % 4, (cells[v][1] - cells[u][1]) % 4) in steps),
    )


def erdos_renyi(n: int, p: float, seed) -> Graph:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_adjacency(upper | upper.T)


def random_connected(n: int, p: float, seed, max_tries: int = 10_000) -> Graph:
    """Erdos-Renyi graph conditioned on connectivity (rejection sampling)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_tries):
        g = erdos_renyi(n, p, rng)
        if g.is_connected():
            return g
    raise RuntimeError(f"no connected G({n}, {p}) after {max_tries} draws")


def all_graphs(n: int):
    """Every labelled simple graph on ``n`` nodes (2**(n(n-1)/2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(e for k, e in enumerate(pairs) if mask >> k & 1))
