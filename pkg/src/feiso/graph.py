"""Simple undirected graphs, subgraph extractors, text I/O and relabeling."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

GRAPH6_MAX_N = 62
_G6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"node count must be nonnegative, got {self.n}")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge {(u, v)} for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        return cls(n, frozenset(norm))

    @classmethod
    def from_adjacency(cls, adj) -> Graph:
        a = np.asarray(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if a.diagonal().any():
            raise ValueError("adjacency has self-loops")
        iu, ju = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], frozenset(zip(iu.tolist(), ju.tolist())))

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        a = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            e = np.array(sorted(self.edges))
            a[e[:, 0], e[:, 1]] = True
            a[e[:, 1], e[:, 0]] = True
        a.flags.writeable = False
        return a

    def neighbours(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[i])

    def degree(self, i: int) -> int:
        return int(self.adjacency[i].sum())

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def induced(self, nodes: Sequence[int]) -> Graph:
        """Induced subgraph on ``nodes``, relabeled ``0..k-1`` in the given order."""
        idx = np.asarray(nodes, dtype=np.intp)
        return Graph.from_adjacency(self.adjacency[np.ix_(idx, idx)])

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        adj = self.adjacency
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(adj[u]).tolist():
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``0..n-1``; ``mapping[i]`` is the image of ``i``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", tuple(int(x) for x in self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"not a permutation: {self.mapping}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.mapping)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``P`` with ``P[p(i), i] = 1`` so ``P @ A @ P.T`` relabels ``A``."""
        n = len(self.mapping)
        p = np.zeros((n, n))
        p[list(self.mapping), list(range(n))] = 1.0
        return p


# -- subgraph extractors ------------------------------------------------------

def neighbourhood_subgraph(g: Graph, i: int) -> Graph:
    """Induced subgraph on the neighbours of ``i`` (``i`` excluded)."""
    _check_node(g, i)
    return g.induced(g.neighbours(i))


def shared_neighbours_subgraph(g: Graph, i: int, j: int) -> Graph:
    """Induced subgraph on nodes adjacent to both ``i`` and ``j``."""
    _check_node(g, i)
    _check_node(g, j)
    a = g.adjacency
    return g.induced(np.flatnonzero(a[i] & a[j]))


def union_neighbours_subgraph(g: Graph, i: int, j: int) -> Graph:
    """Induced subgraph on nodes adjacent to ``i`` or ``j``.

    ``i`` is itself a member only when it is adjacent to ``j`` (and vice versa).
    """
    _check_node(g, i)
    _check_node(g, j)
    a = g.adjacency
    return g.induced(np.flatnonzero(a[i] | a[j]))


def _check_node(g: Graph, i: int) -> None:
    if not 0 <= i < g.n:
        raise IndexError(f"node {i} out of range for n={g.n}")


# -- relabeling ---------------------------------------------------------------

def apply_permutation(g: Graph, p: Permutation) -> Graph:
    if len(p) != g.n:
        raise ValueError(f"permutation size {len(p)} != graph size {g.n}")
    m = p.mapping
    return Graph.from_edges(g.n, ((m[u], m[v]) for u, v in g.edges))


def random_permutation(n: int, seed: int) -> Permutation:
    """Uniform permutation of ``0..n-1``, deterministic in ``seed``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    items = list(range(n))
    random.Random(seed).shuffle(items)  # Fisher-Yates
    return Permutation(tuple(items))


# -- graph6 -------------------------------------------------------------------

class Graph6Error(ValueError):
    """Base class for graph6 decoding errors; ``offset`` is the failing byte."""

    code = "graph6"

    def __init__(self, message: str, offset: int, line: int | None = None):
        where = f"line {line}, " if line is not None else ""
        super().__init__(f"{message} ({where}byte offset {offset})")
        self.reason = message
        self.offset = offset
        self.line = line


class Graph6HeaderError(Graph6Error):
    code = "header"


class Graph6CharError(Graph6Error):
    code = "char"


class Graph6LengthError(Graph6Error):
    code = "length"


class Graph6SizeError(Graph6Error):
    code = "size"


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    base = len(line) - len(line.lstrip())
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
        base += len(_G6_HEADER)
    if not s:
        raise Graph6HeaderError("missing size byte", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6CharError(f"character {ch!r} outside 63..126", base + k)
    if ord(s[0]) == 126:
        raise Graph6SizeError(f"multi-byte size header (n > {GRAPH6_MAX_N}) unsupported", base)
    n = ord(s[0]) - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = s[1:]
    if len(payload) < nbytes:
        raise Graph6LengthError(
            f"truncated bit field: expected {nbytes} data bytes, got {len(payload)}",
            base + 1 + len(payload),
        )
    if len(payload) > nbytes:
        raise Graph6LengthError("trailing bytes after bit field", base + 1 + nbytes)
    bits = []
    for ch in payload:
        v = ord(ch) - 63
        bits.extend((v >> (5 - b)) & 1 for b in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, frozenset(edges))


def emit_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 output supports n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(63 + v))
    return "".join(out)


# -- edge lists ---------------------------------------------------------------

class EdgeListError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_edge_list(text: str, first_line: int = 1) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines. Duplicate edges collapse."""
    lines = [(first_line + k, ln.strip()) for k, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise EdgeListError("empty edge list", first_line)
    no, head = lines[0]
    tok = head.split()
    if len(tok) != 2 or tok[0] != "n":
        raise EdgeListError(f"expected 'n <count>', got {head!r}", no)
    try:
        n = int(tok[1])
    except ValueError:
        raise EdgeListError(f"unparseable node count {tok[1]!r}", no) from None
    if n < 0:
        raise EdgeListError("negative node count", no)
    edges = set()
    for no, ln in lines[1:]:
        tok = ln.split()
        if len(tok) != 2:
            raise EdgeListError(f"expected 'u v', got {ln!r}", no)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise EdgeListError(f"unparseable token in {ln!r}", no) from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"node index out of range in {ln!r}", no)
        if u == v:
            raise EdgeListError(f"self-loop {ln!r}", no)
        edges.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(edges))


def emit_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines)


def read_edge_lists(text: str) -> list[Graph]:
    """Split a file into edge-list blocks, each starting at an ``n`` line."""
    blocks: list[tuple[int, list[str]]] = []
    for no, ln in enumerate(text.splitlines(), start=1):
        s = ln.strip()
        if s.startswith("n ") or s == "n":
            blocks.append((no, [ln]))
        elif s and not s.startswith("#"):
            if not blocks:
                raise EdgeListError(f"edge before any 'n <count>' header: {s!r}", no)
            blocks[-1][1].append(ln)
    return [parse_edge_list("\n".join(body), first_line=no) for no, body in blocks]


def read_graph6_lines(text: str) -> list[Graph]:
    graphs = []
    for no, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        try:
            graphs.append(parse_graph6(ln))
        except Graph6Error as exc:
            raise type(exc)(exc.reason, exc.offset, line=no) from exc
    return graphs
