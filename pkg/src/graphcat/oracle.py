"""Brute-force oracles.

These deliberately avoid the structural shortcuts used elsewhere in the
package: Emb(G) is rebuilt from scratch by generating every small connected
graph H, every étale vertex-injective map H -> G, and merging maps that are
isomorphic over G by an explicit search.
"""
from __future__ import annotations

from itertools import combinations, permutations, product

from .core import Graph, is_connected


def _matchings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for m in _matchings(rest):
        yield m
    for i, other in enumerate(rest):
        for m in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + m


def _abstract_graphs(valences, extended):
    """Connected graphs with the given vertex valences, up to naming."""
    if not valences:
        yield Graph(["x", "y"], {"x": "y", "y": "x"})
        if extended:
            yield Graph(["x", "y"], {"x": "y", "y": "x"}, boundary=())
        return
    nbhd = {f"u{i}": [f"u{i}.{j}" for j in range(k)] for i, k in enumerate(valences)}
    darts = [d for ds in nbhd.values() for d in ds]
    for m in _matchings(darts):
        inv = {}
        for a, b in m:
            inv[a], inv[b] = b, a
        arcs = list(darts)
        for d in darts:
            if d not in inv:
                b = d + "'"
                inv[d], inv[b] = b, d
                arcs.append(b)
        h = Graph(arcs, inv, nbhd)
        if is_connected(h):
            yield h


def _etale_maps(h: Graph, g: Graph):
    """All étale vertex-injective maps h -> g as (arc map, vertex map)."""
    if not h.vertices:
        for a in g.arcs:
            am = {"x": a, "y": g.inv[a]}
            if h.boundary or not g.vertices and not g.boundary:
                yield am, {}
        return
    hv = list(h.vertices)
    for image in permutations(g.vertices, len(hv)):
        if any(h.valence(u) != g.valence(w) for u, w in zip(hv, image)):
            continue
        for bij in product(*(permutations(g.nbhd[w]) for w in image)):
            am = {}
            for u, ds in zip(hv, bij):
                am.update(zip(h.nbhd[u], ds))
            ok = True
            for d in h.darts:
                p = h.inv[d]
                if p in h.darts:
                    if am[p] != g.inv[am[d]]:
                        ok = False
                        break
                else:
                    am[p] = g.inv[am[d]]
            if ok:
                yield am, dict(zip(hv, image))


def _iso_over(h1, f1, h2, f2) -> bool:
    am1, vm1 = f1
    am2, vm2 = f2
    if len(h1.arcs) != len(h2.arcs) or len(h1.vertices) != len(h2.vertices):
        return False
    if not h1.vertices:
        candidates = [dict(zip(h1.arcs, p)) for p in permutations(h2.arcs)]
    else:
        back = {w: u for u, w in vm2.items()}
        z = {}
        for u in h1.vertices:
            u2 = back.get(vm1[u])
            if u2 is None:
                return False
            at = {am2[d]: d for d in h2.nbhd[u2]}
            for d in h1.nbhd[u]:
                z[d] = at[am1[d]]
        for a in h1.arcs:
            if a not in h1.darts:
                z[a] = h2.inv[z[h1.inv[a]]]
        candidates = [z]
    for z in candidates:
        if sorted(z.values()) != sorted(h2.arcs):
            continue
        if any(z[h1.inv[a]] != h2.inv[z[a]] for a in h1.arcs):
            continue
        if {z[a] for a in h1.boundary} != set(h2.boundary):
            continue
        if any(am2[z[a]] != am1[a] for a in h1.arcs):
            continue
        return True
    return False


def brute_force_embeddings(g: Graph, extended: bool = False):
    """Return (keys, number of isomorphism classes over g).

    Each key is the pair (vertex image, boundary image) of one class.
    """
    vals = [g.valence(v) for v in g.vertices]
    shapes = {()}
    for k in range(1, len(vals) + 1):
        for sub in combinations(vals, k):
            shapes.add(tuple(sorted(sub)))
    found = []
    for shape in sorted(shapes):
        for h in _abstract_graphs(list(shape), extended):
            for f in _etale_maps(h, g):
                found.append((h, f))
    reps: list = []
    for h, f in found:
        if not any(_iso_over(h, f, h2, f2) for h2, f2 in reps):
            reps.append((h, f))
    keys = set()
    for h, (am, vm) in reps:
        keys.add((frozenset(vm.values()), frozenset(am[b] for b in h.boundary)))
    return keys, len(reps)


def brute_force_new_maps(g: Graph, h: Graph, mode: str = "plain"):
    """Every (arc map, Emb table) pair obeying the four axioms for new maps.

    Arc maps range over all involution-preserving functions; each class may
    only go to a class whose boundary is the image of its own, which leaves
    at most an edge and a non-edge candidate.
    """
    from .embeddings import enumerate_embeddings
    from .maps import NewGraphMap, check_new_map

    emb_g = enumerate_embeddings(g)
    emb_h = enumerate_embeddings(h)
    reps = sorted({min(e) for e in g.edges})
    out = []
    for images in product(h.arcs, repeat=len(reps)):
        am = {}
        for a, b in zip(reps, images):
            am[a], am[g.inv[a]] = b, h.inv[b]
        options = []
        for c in emb_g:
            bd = [am[a] for a in c.boundary]
            if len(set(bd)) != len(bd):
                options = None
                break
            opts = [d for d in emb_h if d.boundary == frozenset(bd)
                    and (d.is_edge or not c.is_edge)]
            if not opts:
                options = None
                break
            options.append(opts)
        if options is None:
            continue
        for choice in product(*options):
            m = NewGraphMap(g, h, am, dict(zip(emb_g, choice)))
            if not check_new_map(m, mode):
                out.append(m)
    return out


def directed_walks(g: Graph, x, max_vertices: int):
    """Images of étale maps from linear graphs: alternating edge/vertex walks.

    Each walk is (edges, vertices) with edges[i] an input of vertices[i] and
    edges[i + 1] an output of it.
    """
    out = []

    def extend(edges, verts):
        out.append((tuple(edges), tuple(verts)))
        if len(verts) == max_vertices:
            return
        e = edges[-1]
        for d in e:
            if d in g.darts and x[d] < 0:
                v = g.attach[d]
                for o in g.nbhd[v]:
                    if x[o] > 0:
                        extend(edges + [g.edge(o)], verts + [v])

    for e in g.edges:
        extend([e], [])
    return out


def convex_by_lifting(g: Graph, x, c) -> bool:
    """Right lifting against the endpoint inclusions into linear graphs.

    For an injective class this amounts to: every directed walk whose first
    and last edges lie in the subgraph stays inside it.
    """
    from .embeddings import representative

    rep = representative(g, c)
    edges = {g.edge(a) for a in rep.arc_map.values()}
    for es, vs in directed_walks(g, x, len(g.vertices)):
        if es[0] in edges and es[-1] in edges:
            if not set(es) <= edges or not set(vs) <= c.vertices:
                return False
    return True
