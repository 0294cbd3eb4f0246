"""Simple undirected graphs and their metric structure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

UNREACHABLE = -1


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Edges are stored as ordered pairs ``(u, v)`` with ``u < v``.  Instances are
    immutable; derived data (adjacency matrix, neighbour sets) is cached.
    """

    n: int
    edges: frozenset = frozenset()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={self.n}")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, name: str | None = None) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), name)

    @classmethod
    def from_adjacency(cls, adj, name: str | None = None) -> "Graph":
        adj = np.asarray(adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphError("adjacency matrix must be square")
        if (adj != adj.T).any():
            raise GraphError("adjacency matrix must be symmetric")
        if np.diag(adj).any():
            raise GraphError("adjacency matrix has self-loops")
        us, vs = np.nonzero(np.triu(adj, 1))
        return cls(adj.shape[0], frozenset(zip(us.tolist(), vs.tolist())), name)

    @property
    def m(self) -> int:
        return len(self.edges)

    def named(self, name: str) -> "Graph":
        return Graph(self.n, self.edges, name)

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def _adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=float)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        a.setflags(write=False)
        return a

    def adjacency_matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix as floats (a fresh, writable copy)."""
        return self._adjacency.copy()

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degrees(self) -> list[int]:
        return [len(s) for s in self.neighbors]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) == 1

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.m}>"


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)), f"K{n}")


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)), f"P{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)), f"C{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    edges = frozenset((u, a + v) for u in range(a) for v in range(b))
    return Graph(a + b, edges, f"K{a},{b}")


def complete_bipartite_minus_edge(n: int) -> Graph:
    """``K_{n,n}`` with the edge between vertex 0 and vertex n removed."""
    if n < 2:
        raise GraphError(f"K_{{n,n}} - e needs n >= 2, got {n}")
    g = complete_bipartite(n, n)
    return Graph(2 * n, g.edges - {(0, n)}, f"K{n},{n}-e")


def erdos_renyi(n: int, p: float, seed) -> Graph:
    """G(n, p) sample.

    ``seed`` is an integer (seeding numpy's PCG64) or a ``numpy.random.Generator``
    to draw from.  One uniform draw per unordered pair, in lexicographic pair
    order, so a given (n, p, seed) always yields the same graph.
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    if isinstance(seed, np.random.Generator):
        rng = seed
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph(n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    nb = g.neighbors
    while queue:
        u = queue.popleft()
        for w in nb[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances by BFS; ``UNREACHABLE`` (-1) marks missing paths."""
    return np.array([bfs_distances(g, s) for s in range(g.n)], dtype=np.int64)


def is_connected(g: Graph) -> bool:
    return UNREACHABLE not in bfs_distances(g, 0)


def diameter(g: Graph) -> int:
    d = distance_matrix(g)
    if (d == UNREACHABLE).any():
        raise GraphError("diameter of a disconnected graph is undefined")
    return int(d.max())


def power_graph(g: Graph, k: int) -> Graph:
    """Graph on the same vertices joining distinct vertices at distance <= k."""
    if k < 1:
        raise GraphError(f"power must be >= 1, got {k}")
    d = distance_matrix(g)
    close = (d >= 1) & (d <= k)
    us, vs = np.nonzero(np.triu(close, 1))
    name = f"{g.name}^{k}" if g.name else None
    return Graph(g.n, frozenset(zip(us.tolist(), vs.tolist())), name)


def relabel(g: Graph, perm) -> Graph:
    """Apply the vertex map ``v -> perm[v]``."""
    return Graph(g.n, frozenset((perm[u], perm[v]) for u, v in g.edges), g.name)
