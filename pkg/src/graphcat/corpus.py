"""Named small graphs used by the tests, the oracle driver and the CLI."""
from __future__ import annotations

from .core import (Graph, cycle, edge_graph, line, loop_with_one_vertex,
                   nodeless_loop, star)


def _graph(pairs, nbhd, boundary=None):
    inv = {}
    for a, b in pairs:
        inv[a], inv[b] = b, a
    return Graph(list(inv), inv, nbhd, boundary=boundary)


def no_joins() -> Graph:
    """Two vertices joined by two parallel edges, each with one loose end."""
    return _graph([("v0", "v0†"), ("w0", "w0†"), ("v1", "w1"), ("v2", "w2")],
                  {"v": ["v0", "v1", "v2"], "w": ["w0", "w1", "w2"]})


def bigon() -> Graph:
    """Two vertices joined by two parallel edges and nothing else."""
    return _graph([("v1", "w1"), ("v2", "w2")],
                  {"v": ["v1", "v2"], "w": ["w1", "w2"]})


def tadpole() -> Graph:
    """One vertex carrying a loop and a single loose end."""
    return _graph([("1", "2"), ("3", "3†")], {"v": ["1", "2", "3"]})


def theta() -> Graph:
    return _graph([("v1", "w1"), ("v2", "w2"), ("v3", "w3")],
                  {"v": ["v1", "v2", "v3"], "w": ["w1", "w2", "w3"]})


def detour() -> Graph:
    """Three vertices u, x, w with edges u-w, u-x, x-w and a loose end at u.

    With the orientation from ``directed.detour_orientation`` the two-vertex
    subgraph on u and w is injective but not convex.
    """
    return _graph([("i", "i†"), ("uc", "wc"), ("u0", "x0"), ("x1", "w1")],
                  {"u": ["i", "uc", "u0"], "x": ["x0", "x1"], "w": ["wc", "w1"]})


def contracted_corolla() -> Graph:
    """One vertex of valence five where the arcs 2 and 5† are identified."""
    return _graph([("1", "1†"), ("2", "5"), ("3", "3†"), ("4", "4†")],
                  {"v": ["1", "2", "3", "4", "5"]})


def plain_corpus() -> dict[str, Graph]:
    return {
        "edge": edge_graph(),
        "star0": star(0),
        "star1": star(1),
        "star2": star(2),
        "star3": star(3),
        "star4": star(4),
        "line2": line(2),
        "line3": line(3),
        "loop1": loop_with_one_vertex(),
        "tadpole": tadpole(),
        "bigon": bigon(),
        "triangle": cycle(3),
        "no_joins": no_joins(),
        "detour": detour(),
    }


def extended_corpus() -> dict[str, Graph]:
    out = plain_corpus()
    out["nodeless"] = nodeless_loop()
    return out


def trees() -> dict[str, Graph]:
    from .core import is_tree
    return {k: g for k, g in plain_corpus().items() if is_tree(g)}
