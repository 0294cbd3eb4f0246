"""Connected graphs on up to seven vertices, one per isomorphism class.

Classes on n vertices arise from classes on n - 1 vertices by adding a vertex
joined to a non-empty subset (delete a non-cut vertex to go back), and are
deduplicated by a canonical code: the minimum over all vertex permutations of
the edge set read as a bit string.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .graph import Graph

MAX_ENUM_N = 7


class EnumerationError(ValueError):
    pass


@lru_cache(maxsize=None)
def _code_tables(n: int):
    """Bit weight of every edge under every permutation: ``w[perm, edge]``."""
    pairs = list(itertools.combinations(range(n), 2))
    index = {e: i for i, e in enumerate(pairs)}
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    weights = np.zeros((len(perms), len(pairs)), dtype=np.int64)
    for i, (u, v) in enumerate(pairs):
        pu, pv = perms[:, u], perms[:, v]
        lo, hi = np.minimum(pu, pv), np.maximum(pu, pv)
        pos = np.array([index[(a, b)] for a, b in zip(lo.tolist(), hi.tolist())])
        weights[:, i] = np.left_shift(1, pos)
    return index, weights


def canonical_code(g: Graph) -> int:
    if g.n > MAX_ENUM_N + 1:
        raise EnumerationError(f"canonical codes are limited to n <= {MAX_ENUM_N + 1}")
    if g.n < 2:
        return 0
    index, weights = _code_tables(g.n)
    cols = [index[e] for e in g.edges]
    return int(weights[:, cols].sum(axis=1).min())


def _from_code(n: int, code: int) -> Graph:
    pairs = itertools.combinations(range(n), 2)
    return Graph.from_edges(n, [e for i, e in enumerate(pairs) if code >> i & 1])


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple:
    if n == 1:
        return (0,)
    seen = set()
    for code in _codes(n - 1):
        base = _from_code(n - 1, code)
        for mask in range(1, 1 << (n - 1)):
            new = [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
            g = Graph(n, base.edges | frozenset(new))
            seen.add(canonical_code(g))
    return tuple(sorted(seen))


def enumerate_connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on ``n`` vertices up to isomorphism (1 <= n <= 7).

    Larger orders need an external graph6 list (e.g. from nauty's geng).
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise EnumerationError(
            f"built-in enumeration covers 1 <= n <= {MAX_ENUM_N}; supply a graph6 file for n={n}")
    return [_from_code(n, c) for c in _codes(n)]
