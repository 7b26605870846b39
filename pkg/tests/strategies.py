"""Hypothesis strategies for small connected graphs."""
from __future__ import annotations

from hypothesis import assume
from hypothesis import strategies as st

from graphcat.core import Graph, is_connected


@st.composite
def graphs(draw, max_vertices=3, max_valence=3, max_edges=4):
    n = draw(st.integers(1, max_vertices))
    valences = [draw(st.integers(0, max_valence)) for _ in range(n)]
    nbhd = {f"u{i}": [f"u{i}d{j}" for j in range(k)] for i, k in enumerate(valences)}
    darts = [d for ds in nbhd.values() for d in ds]
    order = draw(st.permutations(darts))
    inv, loose = {}, []
    i = 0
    while i < len(order):
        if i + 1 < len(order) and draw(st.booleans()):
            a, b = order[i], order[i + 1]
            inv[a], inv[b] = b, a
            i += 2
        else:
            loose.append(order[i])
            i += 1
    for d in loose:
        inv[d], inv[d + "'"] = d + "'", d
    g = Graph(list(inv), inv, nbhd)
    assume(is_connected(g))
    assume(len(g.edges) <= max_edges)
    return g
