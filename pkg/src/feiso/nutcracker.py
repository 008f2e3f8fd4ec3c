"""Recover an explicit isomorphism between two graphs by energy injection.

Each round overlays node weights on the fixed refined matrix of each graph,
partitions the nodes by their Parry stationary probability into singles and
nuts, and individualizes one node of the first nut in each graph (the "cracker")
with a fresh integer weight. Once every node is a single, the two probability
orders give the correspondence. There is no backtracking: a round in which no
cracker pair keeps the two weighted canonical numbers equal is a failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .canonical import RefinedMatrix, overlay_node_weights, refine, weighted_canonical_numbers
from .graph import Graph, Permutation
from .precision import same_at_digits
from .spectral import MAX_ITER, TOL, ConvergenceError, ReducibleMatrixError, parry_stationary, perron

DEFAULT_DIGITS = 9

SIZE_MISMATCH = "size-mismatch"
CANONICAL_GATE = "canonical-gate"
MISALIGNED = "partition-misalignment"
NO_CRACKER = "no-cracker"
ROUND_CAP = "round-cap"
SINGLES_REGRESSED = "singles-regressed"
VERIFICATION = "verification-failed"
NUMERICAL = "numerical"

Correspondence = Permutation


class MatchFailure(Exception):
    """NutCracker gave up; ``reason`` is one of the module's reason codes."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


@dataclass(frozen=True)
class Partition:
    """Singles as ``(node, probability)`` sorted by probability; nuts as
    ``(nodes, probability)`` sorted by ``(size, probability)``."""

    singles: tuple[tuple[int, float], ...]
    nuts: tuple[tuple[tuple[int, ...], float], ...]

    @property
    def n(self) -> int:
        return len(self.singles) + sum(len(nodes) for nodes, _ in self.nuts)


def partition_by_stationary(pi, digits: int = DEFAULT_DIGITS) -> Partition:
    pi = np.asarray(pi)
    groups: list[list[int]] = []
    for node in np.argsort(pi, kind="stable").tolist():
        if groups and same_at_digits(pi[groups[-1][-1]], pi[node], digits):
            groups[-1].append(node)
        else:
            groups.append([node])
    singles = []
    nuts = []
    for grp in groups:
        prob = float(np.mean(pi[grp]))
        if len(grp) == 1:
            singles.append((grp[0], prob))
        else:
            nuts.append((tuple(sorted(grp)), prob))
    nuts.sort(key=lambda nut: (len(nut[0]), nut[1]))
    return Partition(tuple(singles), tuple(nuts))


def partitions_aligned(p1: Partition, p2: Partition, digits: int = DEFAULT_DIGITS) -> bool:
    if len(p1.singles) != len(p2.singles) or len(p1.nuts) != len(p2.nuts):
        return False
    for (_, a), (_, b) in zip(p1.singles, p2.singles):
        if not same_at_digits(a, b, digits):
            return False
    for (na, a), (nb, b) in zip(p1.nuts, p2.nuts):
        if len(na) != len(nb) or not same_at_digits(a, b, digits):
            return False
    return True


def verify_correspondence(g1: Graph, g2: Graph, c: Permutation) -> bool:
    if g1.n != g2.n or len(c) != g1.n or len(g1.edges) != len(g2.edges):
        return False
    m = c.mapping
    return all(g2.has_edge(m[u], m[v]) for u, v in g1.edges)


def find_correspondence(
    g1: Graph,
    g2: Graph,
    digits: int = DEFAULT_DIGITS,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
    dtype=None,
    lookahead: bool = True,
    on_round: Callable[[int, Partition, Partition], None] | None = None,
) -> Correspondence:
    """Map ``g1`` onto ``g2`` or raise :class:`MatchFailure`.

    A cracker pair must keep the weighted canonical numbers equal. With
    ``lookahead`` it must also leave the two graphs with the same sorted stationary
    distribution; without it, nodes that share a probability and a weighted
    canonical number but lie in different orbits (as happens on the Shrikhande
    graph) can be paired wrongly.

    ``on_round(round, partition1, partition2)`` is called after each partition step.
    """
    if g1.n != g2.n:
        raise MatchFailure(SIZE_MISMATCH, f"{g1.n} vs {g2.n} nodes")
    n = g1.n
    if n < 1:
        raise ValueError("graphs must have at least one node")
    try:
        return _crack(g1, g2, digits, tol, max_iter, dtype, lookahead, on_round)
    except (ConvergenceError, ReducibleMatrixError) as exc:
        raise MatchFailure(NUMERICAL, str(exc)) from exc


def _crack(g1, g2, digits, tol, max_iter, dtype, lookahead, on_round) -> Permutation:
    n = g1.n
    r1 = refine(g1, tol, max_iter, dtype)
    r2 = refine(g2, tol, max_iter, dtype)
    cn1 = perron(r1.base, tol, max_iter)
    cn2 = perron(r2.base, tol, max_iter)
    if not same_at_digits(cn1, cn2, digits):
        raise MatchFailure(CANONICAL_GATE, f"{float(cn1)!r} vs {float(cn2)!r}")

    w1 = np.zeros(n, dtype=r1.base.dtype)
    w2 = np.zeros(n, dtype=r2.base.dtype)
    n_singles = 0
    for rnd in range(n + 1):
        p1 = _partition(r1, w1, digits, tol, max_iter)
        p2 = _partition(r2, w2, digits, tol, max_iter)
        if on_round is not None:
            on_round(rnd, p1, p2)
        if not partitions_aligned(p1, p2, digits):
            raise MatchFailure(MISALIGNED, f"round {rnd}")
        if len(p1.singles) < n_singles:
            raise MatchFailure(SINGLES_REGRESSED, f"round {rnd}: {len(p1.singles)} < {n_singles}")
        n_singles = len(p1.singles)

        if not p1.nuts:
            mapping = [0] * n
            for (u, _), (v, _) in zip(p1.singles, p2.singles):
                mapping[u] = v
            c = Permutation(tuple(mapping))
            if not verify_correspondence(g1, g2, c):
                raise MatchFailure(VERIFICATION, f"round {rnd}")
            return c
        if rnd == n:
            break

        w1 = _single_weights(p1, n, w1.dtype)
        w2 = _single_weights(p2, n, w2.dtype)
        pick = _find_cracker(r1, r2, w1, w2, p1.nuts[0][0], p2.nuts[0][0],
                             n_singles + 1, digits, tol, max_iter, lookahead)
        if pick is None:
            raise MatchFailure(NO_CRACKER, f"round {rnd}")
        v1, v2 = pick
        w1[v1] = n_singles + 1
        w2[v2] = n_singles + 1
    raise MatchFailure(ROUND_CAP, f"nuts remain after {n} rounds")


def _partition(r: RefinedMatrix, w, digits, tol, max_iter) -> Partition:
    res = parry_stationary(overlay_node_weights(r, w), tol, max_iter)
    return partition_by_stationary(res.stationary, digits)


def _single_weights(p: Partition, n: int, dtype) -> np.ndarray:
    w = np.zeros(n, dtype=dtype)
    for k, (node, _) in enumerate(p.singles, start=1):
        w[node] = k
    return w


def _find_cracker(r1, r2, w1, w2, nut1, nut2, weight, digits, tol, max_iter, lookahead):
    """First ``(v1, v2)`` in nested ascending order whose injection keeps the
    two weighted graphs indistinguishable.

    Each graph's candidate values depend only on its own node, so both sides are
    evaluated once per node and the nested scan just compares them.
    """
    cand1 = np.repeat(w1[None], len(nut1), axis=0)
    cand1[np.arange(len(nut1)), list(nut1)] = weight
    cand2 = np.repeat(w2[None], len(nut2), axis=0)
    cand2[np.arange(len(nut2)), list(nut2)] = weight
    cn1 = weighted_canonical_numbers(r1, cand1, tol, max_iter)
    cn2 = weighted_canonical_numbers(r2, cand2, tol, max_iter)
    prof1: dict[int, np.ndarray] = {}
    prof2: dict[int, np.ndarray] = {}

    def profile(cache, r, cand, k):
        if k not in cache:
            res = parry_stationary(overlay_node_weights(r, cand[k]), tol, max_iter)
            cache[k] = np.sort(res.stationary)
        return cache[k]

    for a, v1 in enumerate(nut1):
        for b, v2 in enumerate(nut2):
            if not same_at_digits(cn1[a], cn2[b], digits):
                continue
            if lookahead:
                s1 = profile(prof1, r1, cand1, a)
                s2 = profile(prof2, r2, cand2, b)
                if not all(same_at_digits(x, y, digits) for x, y in zip(s1, s2)):
                    continue
            return v1, v2
    return None
