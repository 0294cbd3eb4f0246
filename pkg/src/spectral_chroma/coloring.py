"""Exact chromatic numbers by DSATUR-ordered branch and bound."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, power_graph

DEFAULT_BUDGET = 100_000_000
MAX_N = 64


class ColoringBudgetExceeded(RuntimeError):
    def __init__(self, lower: int, upper: int, nodes: int):
        self.lower, self.upper, self.nodes = lower, upper, nodes
        super().__init__(f"node budget exhausted after {nodes} nodes; "
                         f"chromatic number lies in [{lower}, {upper}]")


@dataclass(frozen=True)
class ColoringResult:
    chromatic_number: int
    coloring: tuple
    nodes_explored: int


def _masks(g: Graph) -> list[int]:
    out = [0] * g.n
    for u, v in g.edges:
        out[u] |= 1 << v
        out[v] |= 1 << u
    return out


def greedy_clique(g: Graph) -> list[int]:
    """A large clique grown greedily from every start vertex."""
    adj = _masks(g)
    best: list[int] = [0] if g.n else []
    for start in range(g.n):
        clique = [start]
        cand = adj[start]
        while cand:
            # neighbour with the most neighbours among the remaining candidates
            v = max((w for w in range(g.n) if cand >> w & 1),
                    key=lambda w: (bin(adj[w] & cand).count("1"), -w))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur_coloring(g: Graph) -> list[int]:
    """Greedy DSATUR colouring (an upper bound)."""
    adj = _masks(g)
    n = g.n
    colors = [-1] * n
    sat = [0] * n
    for _ in range(n):
        v = max((w for w in range(n) if colors[w] < 0),
                key=lambda w: (bin(sat[w]).count("1"), bin(adj[w]).count("1"), -w))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colors[v] = c
        nb = adj[v]
        while nb:
            low = nb & -nb
            sat[low.bit_length() - 1] |= 1 << c
            nb ^= low
    return colors


def is_proper(g: Graph, coloring) -> bool:
    return len(coloring) == g.n and all(coloring[u] != coloring[v] for u, v in g.edges)


def exact_chromatic_number(g: Graph, budget: int = DEFAULT_BUDGET) -> ColoringResult:
    if g.n > MAX_N:
        raise ValueError(f"exact colouring supports n <= {MAX_N}, got {g.n}")
    if g.n == 0:
        return ColoringResult(0, (), 0)
    adj = _masks(g)
    n = g.n
    best_colors = dsatur_coloring(g)
    best = max(best_colors) + 1
    lower = len(greedy_clique(g))
    nodes = 0

    if lower < best:
        colors = [-1] * n
        # sat_count[v][c]: number of coloured neighbours of v holding colour c
        sat_count = [[0] * n for _ in range(n)]
        sat_mask = [0] * n
        degree = [bin(a).count("1") for a in adj]

        def assign(v: int, c: int, sign: int) -> None:
            nb = adj[v]
            while nb:
                low = nb & -nb
                w = low.bit_length() - 1
                cnt = sat_count[w][c] + sign
                sat_count[w][c] = cnt
                if sign > 0 and cnt == 1:
                    sat_mask[w] |= 1 << c
                elif sign < 0 and cnt == 0:
                    sat_mask[w] &= ~(1 << c)
                nb ^= low

        def search(colored: int, used: int) -> bool:
            """Returns True once a colouring meeting the lower bound is found."""
            nonlocal best, best_colors, nodes
            nodes += 1
            if nodes > budget:
                raise ColoringBudgetExceeded(lower, best, nodes)
            if colored == n:
                best, best_colors = used, list(colors)
                return best <= lower
            v = -1
            key = (-1, -1)
            for w in range(n):
                if colors[w] < 0:
                    k = (bin(sat_mask[w]).count("1"), degree[w])
                    if k > key:
                        key, v = k, w
            forbidden = sat_mask[v]
            # existing classes first, then one new class (classes open in index order)
            for c in range(used + 1):
                if c >= best - 1:
                    break
                if forbidden >> c & 1:
                    continue
                colors[v] = c
                assign(v, c, 1)
                done = search(colored + 1, max(used, c + 1))
                assign(v, c, -1)
                colors[v] = -1
                if done:
                    return True
            return False

        search(0, 0)

    if not is_proper(g, best_colors):
        raise AssertionError("internal error: colouring is not proper")
    return ColoringResult(best, tuple(best_colors), nodes)


def distance_k_chromatic(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> ColoringResult:
    return exact_chromatic_number(power_graph(g, k), budget)
