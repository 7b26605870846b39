"""Orientations, directed graphs and the properadic subcategory.

An orientation is a sign on every arc with sign(a†) = -sign(a).  A dart with
sign +1 is an output of its vertex; a boundary arc with sign +1 is an input
of the whole graph.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations, product
from types import MappingProxyType

from .core import EXTENDED, PLAIN, Graph, GraphError, is_tree, line
from .embeddings import (EmbClass, EtaleMap, _cut_boundary, check_etale,
                         enumerate_embeddings, identity_class, is_member,
                         representative)
from .maps import NewGraphMap, check_new_map, enumerate_maps


class Orientation:
    __slots__ = ("signs", "_hash")

    def __init__(self, signs: Mapping[str, int]):
        self.signs = MappingProxyType(dict(signs))
        self._hash = hash(tuple(sorted(self.signs.items())))

    def __getitem__(self, a):
        return self.signs[a]

    def __eq__(self, other):
        return isinstance(other, Orientation) and dict(self.signs) == dict(other.signs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Orientation(" + " ".join(
            f"{a}{'+' if s > 0 else '-'}" for a, s in sorted(self.signs.items())) + ")"

    def negate(self) -> Orientation:
        return Orientation({a: -s for a, s in self.signs.items()})


def orientation_diagnostics(g: Graph, x: Orientation) -> list[str]:
    if set(x.signs) != set(g.arcs):
        return ["orientation: must give a sign to every arc"]
    for a in g.arcs:
        if x[a] not in (1, -1):
            return [f"orientation: sign of {a} is not ±1"]
        if x[g.inv[a]] != -x[a]:
            return [f"orientation: not involutive at {a}"]
    return []


def orientations_of(g: Graph) -> list[Orientation]:
    reps = sorted(min(e) for e in g.edges)
    out = []
    for signs in product((1, -1), repeat=len(reps)):
        x = {}
        for a, s in zip(reps, signs):
            x[a], x[g.inv[a]] = s, -s
        out.append(Orientation(x))
    return out


def restrict_orientation(m: NewGraphMap, x: Orientation) -> Orientation:
    return Orientation({a: x[b] for a, b in m.arc_map.items()})


@dataclass(frozen=True)
class DirectedGraph:
    graph: Graph
    orientation: Orientation

    def __post_init__(self):
        diag = orientation_diagnostics(self.graph, self.orientation)
        if diag:
            raise GraphError(diag[0])


def inputs(g: Graph, x: Orientation, v: str) -> frozenset:
    return frozenset(d for d in g.nbhd[v] if x[d] < 0)


def outputs(g: Graph, x: Orientation, v: str) -> frozenset:
    return frozenset(d for d in g.nbhd[v] if x[d] > 0)


def class_inputs(x: Orientation, c: EmbClass) -> frozenset:
    return frozenset(a for a in c.boundary if x[a] > 0)


def class_outputs(x: Orientation, c: EmbClass) -> frozenset:
    return frozenset(a for a in c.boundary if x[a] < 0)


def graph_inputs(dg: DirectedGraph) -> frozenset:
    return class_inputs(dg.orientation, identity_class(dg.graph))


def graph_outputs(dg: DirectedGraph) -> frozenset:
    return class_outputs(dg.orientation, identity_class(dg.graph))


def four_sets(dg: DirectedGraph) -> dict:
    """The presentation E <- I -> V <- O -> E of a directed graph.

    Darts are listed by name under I and O; the loose ends of the graph are
    split into inputs and outputs, and a nodeless loop records its +1 arc.
    """
    g, x = dg.graph, dg.orientation
    loose = set(g.arcs) - g.darts
    return {
        "E": [sorted(e) for e in g.edges],
        "V": list(g.vertices),
        "I": sorted((g.attach[d], d) for d in g.darts if x[d] < 0),
        "O": sorted((g.attach[d], d) for d in g.darts if x[d] > 0),
        "in": sorted(a for a in g.boundary if x[a] > 0),
        "out": sorted(a for a in g.boundary if x[a] < 0),
        "L": sorted(a for a in loose - g.boundary if x[a] > 0),
    }


def from_four_sets(sets: Mapping) -> DirectedGraph:
    inv, nbhd, signs = {}, {v: [] for v in sets["V"]}, {}
    for a, b in sets["E"]:
        inv[a], inv[b] = b, a
    for key, sign in (("I", -1), ("O", 1)):
        for v, d in sets[key]:
            nbhd[v].append(d)
            signs[d] = sign
    for key, sign in (("in", 1), ("out", -1), ("L", 1)):
        for a in sets[key]:
            signs[a] = sign
    for a in list(inv):
        if a not in signs and inv[a] in signs:
            signs[a] = -signs[inv[a]]
    boundary = list(sets["in"]) + list(sets["out"])
    g = Graph(list(inv), inv, nbhd, boundary=boundary)
    return DirectedGraph(g, Orientation(signs))


def p_map_diagnostics(f: EtaleMap, xs: Orientation, xt: Orientation) -> list[str]:
    """Validation predicate for p-maps between extended directed graphs.

    Inputs and outputs of each vertex go bijectively to those of its image,
    and loop edges go to loop edges.  Vertex injectivity is not required.
    """
    diag = check_etale(f, EXTENDED)
    if diag:
        return diag
    for a, b in f.arc_map.items():
        if xs[a] != xt[b]:
            return [f"orientation: sign of {a} not preserved"]
    return []


def check_oriented_map(m: NewGraphMap, xs: Orientation, xt: Orientation,
                       mode: str = PLAIN) -> list[str]:
    diag = check_new_map(m, mode)
    if diag:
        return diag
    for a, b in m.arc_map.items():
        if xs[a] != xt[b]:
            return [f"orientation: sign of {a} not preserved"]
    for c in enumerate_embeddings(m.source):
        d = m(c)
        if {m.arc_map[a] for a in class_inputs(xs, c)} != class_inputs(xt, d):
            return [f"(iv'): inputs of {c!r} not preserved"]
        if {m.arc_map[a] for a in class_outputs(xs, c)} != class_outputs(xt, d):
            return [f"(iv'): outputs of {c!r} not preserved"]
    return []


def oriented_maps(src: DirectedGraph, tgt: DirectedGraph, category: str = "U",
                  **caps) -> list[NewGraphMap]:
    return [m for m in enumerate_maps(src.graph, tgt.graph, category, **caps)
            if restrict_orientation(m, tgt.orientation) == src.orientation]


def is_linear(dg: DirectedGraph) -> bool:
    g, x = dg.graph, dg.orientation
    if g.is_nodeless_loop():
        return False
    return (all(len(inputs(g, x, v)) == 1 and len(outputs(g, x, v)) == 1
                for v in g.vertices)
            and len(graph_inputs(dg)) == 1 and len(graph_outputs(dg)) == 1)


def is_dendroidal(dg: DirectedGraph) -> bool:
    """Every vertex and the graph itself have exactly one output."""
    g, x = dg.graph, dg.orientation
    if g.is_nodeless_loop():
        return False
    return (all(len(outputs(g, x, v)) == 1 for v in g.vertices)
            and len(graph_outputs(dg)) == 1)


def _edge_steps(g: Graph, x: Orientation) -> dict:
    """One-step reachability edge -> edge through a vertex."""
    steps = {e: set() for e in g.edges}
    for v in g.vertices:
        for i in inputs(g, x, v):
            for o in outputs(g, x, v):
                steps[g.edge(i)].add(g.edge(o))
    return steps


def is_acyclic(dg: DirectedGraph) -> bool:
    g = dg.graph
    if g.is_nodeless_loop():
        return False
    steps = _edge_steps(g, dg.orientation)
    state: dict = {}

    def visit(e):
        state[e] = 1
        for f in steps[e]:
            if state.get(f) == 1 or (f not in state and not visit(f)):
                return False
        state[e] = 2
        return True

    return all(state.get(e) == 2 or visit(e) for e in g.edges)


def _class_edges(g: Graph, c: EmbClass) -> set:
    rep = representative(g, c)
    return {g.edge(b) for b in rep.arc_map.values()}


def is_injective_class(g: Graph, c: EmbClass) -> bool:
    rep = representative(g, c)
    return len(set(rep.arc_map.values())) == len(rep.arc_map)


def _reach(g: Graph, x: Orientation, starts, forward: bool) -> set:
    """Vertices reachable from (or reaching) the given edges."""
    seen_v, seen_e, todo = set(), set(starts), list(starts)
    while todo:
        e = todo.pop()
        for d in e:
            if d not in g.darts:
                continue
            v = g.attach[d]
            if (x[d] < 0) != forward or v in seen_v:
                continue
            seen_v.add(v)
            nxt = outputs(g, x, v) if forward else inputs(g, x, v)
            for o in nxt:
                f = g.edge(o)
                if f not in seen_e:
                    seen_e.add(f)
                    todo.append(f)
    return seen_v


def is_convex(dg: DirectedGraph, c: EmbClass) -> bool:
    # A directed path between two edges of the subgraph that leaves it must
    # pass through an outside vertex lying both downstream and upstream of the
    # subgraph's edges; conversely any such vertex gives a path that does not
    # lift.  So convexity is a reachability test.
    g, x = dg.graph, dg.orientation
    edges = _class_edges(g, c)
    down = _reach(g, x, edges, forward=True)
    up = _reach(g, x, edges, forward=False)
    return not ((down & up) - c.vertices)


def is_structured(dg: DirectedGraph, c: EmbClass) -> bool:
    return is_injective_class(dg.graph, c) and is_convex(dg, c)


def structured_subgraphs(dg: DirectedGraph) -> tuple[EmbClass, ...]:
    if not is_acyclic(dg):
        raise GraphError("structured subgraphs need an acyclic graph")
    return tuple(c for c in enumerate_embeddings(dg.graph) if is_structured(dg, c))


def structured_union(dg: DirectedGraph, h: EmbClass, k: EmbClass) -> EmbClass | None:
    """Set-theoretic union of two subgraphs when it is again structured."""
    g = dg.graph
    vs = h.vertices | k.vertices
    es = _class_edges(g, h) | _class_edges(g, k)
    if not vs:
        if len(es) != 1:
            return None
        return h
    incident = {g.edge(d) for v in vs for d in g.nbhd[v]}
    if es != incident:
        return None
    c = EmbClass(vs, _cut_boundary(g, vs, frozenset()))
    if not is_member(c, g) or not is_structured(dg, c):
        return None
    return c


def edge_map(m: NewGraphMap) -> dict:
    s, t = m.source, m.target
    return {e: t.edge(m.arc_map[min(e)]) for e in s.edges}


def is_properadic(m: NewGraphMap, xs: Orientation, xt: Orientation) -> bool:
    src, tgt = DirectedGraph(m.source, xs), DirectedGraph(m.target, xt)
    if check_oriented_map(m, xs, xt):
        raise GraphError("is_properadic: not an oriented map")
    if not (is_acyclic(src) and is_acyclic(tgt)):
        raise GraphError("is_properadic: both graphs must be acyclic")
    return is_structured(tgt, m(identity_class(m.source)))


def properadic_restriction(m: NewGraphMap, xs: Orientation, xt: Orientation) -> dict:
    """The restriction of the Emb table to structured subgraphs.

    Raises if an image leaves sSb or if in/out or structured unions are not
    preserved.
    """
    if not is_properadic(m, xs, xt):
        raise GraphError("image not structured")
    src, tgt = DirectedGraph(m.source, xs), DirectedGraph(m.target, xt)
    em = edge_map(m)
    table = {}
    for c in structured_subgraphs(src):
        d = m(c)
        if not is_structured(tgt, d):
            raise GraphError(f"image of {c!r} not structured")
        for pick, name in ((class_inputs, "inputs"), (class_outputs, "outputs")):
            if {em[m.source.edge(a)] for a in pick(xs, c)} != \
                    {m.target.edge(a) for a in pick(xt, d)}:
                raise GraphError(f"{name} of {c!r} not preserved")
        table[c] = d
    for h, k in combinations(table, 2):
        u = structured_union(src, h, k)
        if u is None:
            continue
        v = structured_union(tgt, table[h], table[k])
        if v is None or table[u] != v:
            raise GraphError(f"union of {h!r}, {k!r} not preserved")
    return table


def is_dioperadic(m: NewGraphMap, xs: Orientation, xt: Orientation) -> bool:
    if not (is_tree(m.source) and is_tree(m.target)):
        raise GraphError("is_dioperadic: both graphs must be trees")
    return not check_oriented_map(m, xs, xt)


def linear_orientation(n: int) -> DirectedGraph:
    """``line(n)`` directed from its first loose end to its last."""
    g = line(n)
    if n == 0:
        return DirectedGraph(g, Orientation({"♯": 1, "♭": -1}))
    x = {}
    for e in g.edges:
        lo = next(a for a in e if a.endswith("-"))
        x[lo], x[g.inv[lo]] = 1, -1
    return DirectedGraph(g, Orientation(x))


def rooted_orientation(t: Graph, root: str) -> Orientation:
    """Orientation of a tree with every edge pointing toward ``root``.

    ``root`` is a boundary arc; it becomes the single output of the tree.
    """
    if root not in t.boundary:
        raise GraphError("the root must be a boundary arc")
    x = {root: -1, t.inv[root]: 1}
    todo = [t.inv[root]] if t.inv[root] in t.darts else []
    while todo:
        d = todo.pop()
        v = t.attach[d]
        for e in t.nbhd[v]:
            if e == d:
                continue
            # e is an input of v: the arc beyond it points toward v
            x[e], x[t.inv[e]] = -1, 1
            if t.inv[e] in t.darts:
                todo.append(t.inv[e])
    return Orientation(x)


def directed_nodeless_loop() -> DirectedGraph:
    from .core import nodeless_loop
    return DirectedGraph(nodeless_loop(), Orientation({"o": 1, "o†": -1}))


def detour_orientation() -> Orientation:
    """Orientation of ``corpus.detour`` with all edges pointing away from u."""
    return Orientation({"i": -1, "i†": 1, "uc": 1, "wc": -1, "u0": 1, "x0": -1,
                        "x1": 1, "w1": -1})
