"""Catalogue of named graphs.

Edge lists follow the usual textbook constructions.  Several graphs are
built from generic families (LCF notation, generalized Petersen graphs); the
rest are literal edge dictionaries.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable

from .graph import (Graph, GraphError, complete_bipartite, complete_bipartite_minus_edge,
                    complete_graph, cycle_graph, path_graph)


class CatalogError(KeyError):
    pass


def _from_dict(n: int, adj: dict, name: str) -> Graph:
    return Graph(n, frozenset((u, v) for u, vs in adj.items() for v in vs), name)


def _cycle_edges(vertices) -> list:
    vs = list(vertices)
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def _path_edges(vertices) -> list:
    vs = list(vertices)
    return list(zip(vs, vs[1:]))


def lcf_graph(n: int, shifts: list[int], repeats: int, name: str | None = None) -> Graph:
    """Hamiltonian graph from LCF notation ``[shifts]^repeats`` on ``n`` vertices."""
    edges = set(_cycle_edges(range(n)))
    seq = shifts * repeats
    for i in range(n):
        j = (i + seq[i % len(seq)]) % n
        edges.add((min(i, j), max(i, j)))
    return Graph(n, frozenset(edges), name)


def generalized_petersen(n: int, k: int, name: str | None = None) -> Graph:
    """GP(n, k): outer n-cycle, spokes, inner star polygon {n/k}."""
    edges = set()
    for i in range(n):
        edges.add((i, (i + 1) % n))
        edges.add((i, n + i))
        edges.add((n + i, n + (i + k) % n))
    return Graph(2 * n, frozenset(edges), name)


def mycielskian(g: Graph, name: str | None = None) -> Graph:
    n = g.n
    edges = set(g.edges)
    for u, v in g.edges:
        edges.add((u, n + v))
        edges.add((v, n + u))
    edges.update((n + v, 2 * n) for v in range(n))
    return Graph(2 * n + 1, frozenset(edges), name)


def _hypercube(d: int, name: str | None = None) -> Graph:
    n = 1 << d
    edges = {(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)}
    return Graph(n, frozenset(edges), name)


def petersen() -> Graph:
    return generalized_petersen(5, 2, "Petersen Graph")


def truncated_prism() -> Graph:
    edges = [
        (0, 1), (0, 2), (0, 3), (1, 14), (1, 15), (2, 3), (2, 17), (3, 16),
        (4, 5), (4, 11), (4, 16), (5, 8), (5, 16), (6, 7), (6, 8), (6, 9),
        (7, 8), (7, 10), (9, 12), (9, 17), (10, 11), (10, 13), (11, 13),
        (12, 15), (12, 17), (13, 14), (14, 15),
    ]
    return Graph.from_edges(18, edges, "Truncated Prism")


def bidiakis_cube() -> Graph:
    return lcf_graph(12, [6, 4, -4], 4, "Bidiakis Cube")


def blanusa_first_snark() -> Graph:
    # dot product of two Petersen graphs; girth 5, not 3-edge-colourable
    edges = [(0, 4), (0, 5), (0, 12), (1, 2), (1, 6), (1, 13), (2, 3), (2, 7), (3, 4),
             (3, 10), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9), (7, 9), (8, 14), (10, 11),
             (10, 15), (11, 12), (11, 16), (12, 17), (13, 15), (13, 16), (14, 16),
             (14, 17), (15, 17)]
    return Graph.from_edges(18, edges, "Blanusa First Snark Graph")


def blanusa_second_snark() -> Graph:
    # vertices (side, i) -> 8*side + i for i < 8; the two centres are 16, 17
    def v(side, i):
        return 8 * side + i

    c0, c1 = 16, 17
    edges = [(c0, v(0, 0)), (c0, v(1, 4)), (c0, c1), (c1, v(0, 3)), (c1, v(1, 1)),
             (v(0, 2), v(0, 5)), (v(0, 6), v(0, 4)), (v(0, 7), v(0, 1)),
             (v(1, 7), v(1, 2)), (v(1, 0), v(1, 6)), (v(1, 3), v(1, 5))]
    edges += _cycle_edges(v(0, i) for i in range(5))
    edges += _cycle_edges(v(1, i) for i in range(5))
    edges += _cycle_edges([v(0, i) for i in range(5, 8)] + [v(1, i) for i in range(5, 8)])
    return Graph.from_edges(18, edges, "Blanusa Second Snark Graph")


def bull() -> Graph:
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)], "Bull Graph")


def butterfly() -> Graph:
    return Graph.from_edges(5, [(0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)], "Butterfly Graph")


def chvatal() -> Graph:
    adj = {0: [1, 4, 6, 9], 1: [2, 5, 7], 2: [3, 6, 8], 3: [4, 7, 9], 4: [5, 8],
           5: [10, 11], 6: [10, 11], 7: [8, 11], 8: [10], 9: [10, 11]}
    return _from_dict(12, adj, "Chvatal Graph")


def claw() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)], "Claw Graph")


def clebsch() -> Graph:
    # folded 5-cube: 4-cube plus antipodal edges
    q = _hypercube(4)
    edges = set(q.edges) | {(v, v ^ 15) for v in range(16) if v < v ^ 15}
    return Graph(16, frozenset(edges), "Clebsch Graph")


def dart() -> Graph:
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3)], "Dart Graph")


def desargues() -> Graph:
    return generalized_petersen(10, 3, "Desargues Graph")


def diamond() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], "Diamond Graph")


def dodecahedral() -> Graph:
    return generalized_petersen(10, 2, "Dodecahedral Graph")


def durer() -> Graph:
    return generalized_petersen(6, 2, "Durer Graph")


def errera() -> Graph:
    adj = {0: [1, 7, 14, 15, 16], 1: [2, 9, 14, 15], 2: [3, 8, 9, 10, 14],
           3: [4, 9, 10, 11], 4: [5, 10, 11, 12], 5: [6, 11, 12, 13],
           6: [7, 8, 12, 13, 16], 7: [13, 15, 16], 8: [10, 12, 14, 16],
           9: [11, 13, 15], 10: [12], 11: [13], 13: [15], 14: [16]}
    return _from_dict(17, adj, "Errera Graph")


def flower_snark() -> Graph:
    # J5: hub a_i joined to b_i, c_i, d_i; b's form a 5-cycle, c's and d's one 10-cycle
    a, b, c, d = (lambda i: i), (lambda i: 5 + i), (lambda i: 10 + i), (lambda i: 15 + i)
    edges = []
    for i in range(5):
        edges += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b((i + 1) % 5))]
    edges += _cycle_edges([c(i) for i in range(5)] + [d(i) for i in range(5)])
    return Graph.from_edges(20, edges, "Flower Snark")


def folkman() -> Graph:
    # two copies of each K5 vertex (0..9) joined to the K5 edges (10..19) containing it
    k5_edges = list(itertools.combinations(range(5), 2))
    edges = []
    for idx, (x, y) in enumerate(k5_edges):
        for copy in (0, 5):
            edges += [(10 + idx, x + copy), (10 + idx, y + copy)]
    return Graph.from_edges(20, edges, "Folkman Graph")


def fork() -> Graph:
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)], "Fork Graph")


def franklin() -> Graph:
    return lcf_graph(12, [5, -5], 6, "Franklin Graph")


def frucht() -> Graph:
    return lcf_graph(12, [-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2], 1, "Frucht Graph")


def gem() -> Graph:
    edges = [(0, 1), (1, 2), (2, 3)] + [(4, i) for i in range(4)]
    return Graph.from_edges(5, edges, "Gem Graph")


def goldner_harary() -> Graph:
    # triangular bipyramid (triangle 0,1,2; apexes 3,4) with a vertex stacked in each face
    edges = [(0, 1), (1, 2), (0, 2)] + [(apex, t) for apex in (3, 4) for t in range(3)]
    faces = [(x, y, apex) for apex in (3, 4) for x, y in ((0, 1), (1, 2), (0, 2))]
    for idx, face in enumerate(faces):
        edges += [(5 + idx, f) for f in face]
    return Graph.from_edges(11, edges, "Goldner Harary Graph")


def golomb() -> Graph:
    adj = {0: [1, 2, 3], 1: [2, 5], 2: [7], 3: [4, 8, 9], 4: [5, 9], 5: [6, 9],
           6: [7, 9], 7: [8, 9], 8: [9]}
    return _from_dict(10, adj, "Golomb Graph")


def grotzsch() -> Graph:
    return mycielskian(cycle_graph(5), "Grotzsch Graph")


def heawood() -> Graph:
    return lcf_graph(14, [5, -5], 7, "Heawood Graph")


def herschel() -> Graph:
    adj = {0: [2, 3, 4, 5], 1: [2, 3, 6, 7], 2: [10], 3: [9], 4: [8, 9],
           5: [8, 10], 6: [8, 9], 7: [8, 10]}
    return _from_dict(11, adj, "Herschel Graph")


def hexahedral() -> Graph:
    return _hypercube(3, "Hexahedral Graph")


def hoffman() -> Graph:
    """The graph cospectral with the 4-cube but not isomorphic to it.

    Obtained from Q4 by Godsil-McKay switching on the independent set
    {0000, 0011, 0101, 1001}: every outside vertex has zero, two or four
    neighbours there, and those with two swap them for the other two.
    """
    q = _hypercube(4)
    switch = {0b0000, 0b0011, 0b0101, 0b1001}
    edges = {e for e in q.edges if not (set(e) & switch) or set(e) <= switch}
    for v in range(16):
        if v in switch:
            continue
        nbrs = q.neighbors[v] & switch
        new = switch - nbrs if len(nbrs) == 2 else nbrs
        edges.update((min(v, s), max(v, s)) for s in new)
    return Graph(16, frozenset(edges), "Hoffman Graph")


def house() -> Graph:
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 4)], "House Graph")


def house_x() -> Graph:
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
    return Graph.from_edges(5, edges, "HouseX Graph")


def icosahedral() -> Graph:
    # apex 0, upper pentagon 1..5, lower pentagon 6..10, apex 11
    edges = []
    for i in range(5):
        u, u1 = 1 + i, 1 + (i + 1) % 5
        l, l1 = 6 + i, 6 + (i + 1) % 5
        edges += [(0, u), (u, u1), (u, l), (u, l1), (l, l1), (l, 11)]
    return Graph.from_edges(12, edges, "Icosahedral Graph")


def krackhardt_kite() -> Graph:
    adj = {0: [1, 2, 3, 5], 1: [3, 4, 6], 2: [3, 5], 3: [4, 5, 6], 4: [6],
           5: [6, 7], 6: [7], 7: [8], 8: [9]}
    return _from_dict(10, adj, "Krackhardt Kite Graph")


def moebius_kantor() -> Graph:
    return generalized_petersen(8, 3, "Moebius Kantor Graph")


def moser_spindle() -> Graph:
    adj = {0: [1, 4, 6], 1: [2, 5], 2: [3, 5], 3: [4, 5, 6], 4: [6]}
    return _from_dict(7, adj, "Moser Spindle")


def octahedral() -> Graph:
    edges = [(u, v) for u in range(6) for v in range(u + 1, 6) if v != u + 3]
    return Graph.from_edges(6, edges, "Octahedral Graph")


def pappus() -> Graph:
    return lcf_graph(18, [5, 7, -7, 7, -7, -5], 3, "Pappus Graph")


def poussin() -> Graph:
    edges = [(u, v) for u, vs in {2: [7, 8, 3, 4], 1: [7, 6], 0: [6, 5, 4], 3: [5]}.items()
             for v in vs]
    edges += _cycle_edges(range(3))
    edges += _cycle_edges(range(3, 9))
    edges += _cycle_edges(range(9, 14))
    edges += _path_edges([8, 12, 7, 11, 6, 10, 5, 9, 3, 13, 8, 12])
    edges += [(14, i) for i in range(9, 14)]
    return Graph.from_edges(15, edges, "Poussin Graph")


def robertson() -> Graph:
    edges = set(_cycle_edges(range(19)))
    chords = [8, 4, 7, 4, 8, 5, 7, 4, 7, 8, 4, 5, 7, 8, 4, 8, 4, 8, 4]
    for i, s in enumerate(chords):
        j = (i + s) % 19
        edges.add((min(i, j), max(i, j)))
    return Graph(19, frozenset(edges), "Robertson Graph")


def shrikhande() -> Graph:
    def idx(x, y):
        return 4 * (x % 4) + (y % 4)

    edges = set()
    for x in range(4):
        for y in range(4):
            for dx, dy in ((1, 0), (0, 1), (1, 1)):
                u, v = idx(x, y), idx(x + dx, y + dy)
                edges.add((min(u, v), max(u, v)))
    return Graph(16, frozenset(edges), "Shrikhande Graph")


def sousselier() -> Graph:
    edges = _cycle_edges(range(15))
    edges += _path_edges([12, 8, 3, 14]) + _path_edges([9, 5, 0, 11]) + [(6, 2)]
    edges += [(15, i) for i in range(1, 15, 3)]
    return Graph.from_edges(16, edges, "Sousselier Graph")


def thomsen() -> Graph:
    return complete_bipartite(3, 3).named("Thomsen Graph")


def tietze() -> Graph:
    # Petersen graph with vertex 0 replaced by a triangle
    p = petersen()
    nbrs = sorted(p.neighbors[0])
    relabel = {v: v - 1 for v in range(1, 10)}
    edges = [(relabel[u], relabel[v]) for u, v in p.edges if 0 not in (u, v)]
    tri = [9, 10, 11]
    edges += _cycle_edges(tri)
    edges += [(t, relabel[w]) for t, w in zip(tri, nbrs)]
    return Graph.from_edges(12, edges, "Tietze Graph")


def truncated_tetrahedral() -> Graph:
    # corners of tetrahedron vertex i are 3i, 3i+1, 3i+2
    edges = []
    for i in range(4):
        edges += _cycle_edges([3 * i, 3 * i + 1, 3 * i + 2])
    slot = {i: iter(range(3 * i, 3 * i + 3)) for i in range(4)}
    for i, j in itertools.combinations(range(4), 2):
        edges.append((next(slot[i]), next(slot[j])))
    return Graph.from_edges(12, edges, "Truncated Tetrahedral Graph")


def wagner() -> Graph:
    edges = _cycle_edges(range(8)) + [(i, i + 4) for i in range(4)]
    return Graph.from_edges(8, edges, "Wagner Graph")


# the 44 graphs of the distance-2 comparison table, in table order
TABLE1_GRAPHS: dict[str, Callable[[], Graph]] = {
    "bidiakis_cube": bidiakis_cube,
    "blanusa_first_snark": blanusa_first_snark,
    "blanusa_second_snark": blanusa_second_snark,
    "bull": bull,
    "butterfly": butterfly,
    "chvatal": chvatal,
    "claw": claw,
    "clebsch": clebsch,
    "dart": dart,
    "desargues": desargues,
    "diamond": diamond,
    "dodecahedral": dodecahedral,
    "durer": durer,
    "errera": errera,
    "flower_snark": flower_snark,
    "folkman": folkman,
    "fork": fork,
    "franklin": franklin,
    "frucht": frucht,
    "gem": gem,
    "goldner_harary": goldner_harary,
    "golomb": golomb,
    "grotzsch": grotzsch,
    "heawood": heawood,
    "herschel": herschel,
    "hexahedral": hexahedral,
    "hoffman": hoffman,
    "house": house,
    "housex": house_x,
    "icosahedral": icosahedral,
    "krackhardt_kite": krackhardt_kite,
    "moebius_kantor": moebius_kantor,
    "moser_spindle": moser_spindle,
    "octahedral": octahedral,
    "pappus": pappus,
    "petersen": petersen,
    "poussin": poussin,
    "robertson": robertson,
    "shrikhande": shrikhande,
    "sousselier": sousselier,
    "thomsen": thomsen,
    "tietze": tietze,
    "truncated_tetrahedral": truncated_tetrahedral,
    "wagner": wagner,
}

CATALOG: dict[str, Callable[[], Graph]] = {**TABLE1_GRAPHS, "truncated_prism": truncated_prism}


# k5, c7, p4, k3,4 and k4,4-e (also written k_{4,4}-e)
_FAMILY = re.compile(r"([kcp])_?\{?(\d+)(?:,(\d+))?\}?(_e)?")


def _key(name: str) -> str:
    key = name.strip().lower().replace("-", "_").replace(" ", "_")
    for suffix in ("_graph",):
        if key.endswith(suffix) and key[: -len(suffix)] in CATALOG:
            key = key[: -len(suffix)]
    return key


def named_graph(name: str) -> Graph:
    """Look up a catalogue graph by name (case, spaces, dashes and a trailing
    ``graph`` are ignored).  Also accepts the families ``kN``, ``cN``, ``pN``,
    ``kA,B`` and ``kN,N-e``."""
    key = _key(name)
    if key in CATALOG:
        return CATALOG[key]()
    fam = _FAMILY.fullmatch(key)
    if fam:
        kind, a, b, minus = fam.groups()
        a = int(a)
        if kind == "k" and b is None and not minus:
            return complete_graph(a)
        if kind == "k" and b is not None:
            if minus:
                if int(b) != a:
                    raise CatalogError(f"K_{{n,n}}-e needs equal sides, got {name!r}")
                return complete_bipartite_minus_edge(a)
            return complete_bipartite(a, int(b))
        if kind == "c" and b is None and not minus:
            return cycle_graph(a)
        if kind == "p" and b is None and not minus:
            return path_graph(a)
    raise CatalogError(
        f"unknown graph {name!r}; available: {', '.join(sorted(CATALOG))}"
    )


def catalog_names() -> list[str]:
    return list(CATALOG)


__all__ = ["CATALOG", "TABLE1_GRAPHS", "CatalogError", "GraphError", "named_graph",
           "catalog_names", "lcf_graph", "generalized_petersen", "mycielskian"]
