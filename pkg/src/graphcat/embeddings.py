"""Étale maps, embeddings and the poset Emb(G).

An element of Emb(G) is stored as the pair (vertex image, boundary image).
Two embeddings into G are isomorphic over G exactly when these pairs agree,
so the pair is a faithful key and no quotienting happens at runtime.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from collections.abc import Mapping

from .core import EXTENDED, PLAIN, Graph, GraphError, is_connected, validate

CUT = "~"


@dataclass(frozen=True)
class EmbClass:
    vertices: frozenset = field(default_factory=frozenset)
    boundary: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "boundary", frozenset(self.boundary))

    @property
    def is_edge(self) -> bool:
        return not self.vertices and bool(self.boundary)

    def sort_key(self):
        return (len(self.vertices), sorted(self.vertices), len(self.boundary),
                sorted(self.boundary))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        vs = ",".join(sorted(self.vertices))
        bs = ",".join(sorted(self.boundary))
        return f"[{vs}|{bs}]"


def vertex_sum(c: EmbClass) -> frozenset:
    return c.vertices


def boundary_of(c: EmbClass) -> frozenset:
    return c.boundary


@dataclass(frozen=True)
class EtaleMap:
    source: Graph
    target: Graph
    arc_map: Mapping
    vertex_map: Mapping

    @staticmethod
    def build(source: Graph, target: Graph, arc_map: Mapping,
              vertex_map: Mapping | None = None) -> EtaleMap:
        vm = dict(vertex_map or {})
        for d, v in source.attach.items():
            vm.setdefault(v, target.attach.get(arc_map[d]))
        return EtaleMap(source, target, dict(arc_map), vm)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.arc_map.items()))))


def _loop_arcs(g: Graph) -> set:
    dag = {g.inv[d] for d in g.darts}
    return set(g.arcs) - g.darts - dag - g.boundary


def check_etale(f: EtaleMap, mode: str = PLAIN) -> list[str]:
    s, t, am, vm = f.source, f.target, f.arc_map, f.vertex_map
    if set(am) != set(s.arcs) or any(am[a] not in t.inv for a in s.arcs):
        return ["arc map: not a total function into the target arcs"]
    if set(vm) != set(s.vertices) or any(vm[v] not in t.nbhd for v in s.vertices):
        return ["vertex map: not a total function into the target vertices"]
    for a in s.arcs:
        if am[s.inv[a]] != t.inv[am[a]]:
            return [f"naturality: involution not preserved at {a}"]
    for d, v in s.attach.items():
        if am[d] not in t.darts:
            return [f"naturality: dart {d} not sent to a dart"]
        if t.attach[am[d]] != vm[v]:
            return [f"naturality: attachment not preserved at {d}"]
    for v in s.vertices:
        image = [am[d] for d in s.nbhd[v]]
        if len(set(image)) != len(image) or set(image) != set(t.nbhd[vm[v]]):
            return [f"pullback: nbhd({v}) not sent bijectively onto nbhd({vm[v]})"]
    if mode == EXTENDED:
        tl = _loop_arcs(t)
        if any(am[a] not in tl for a in _loop_arcs(s)):
            return ["extended: loop arcs must land on loop arcs"]
    return []


def check_embedding(f: EtaleMap, mode: str = PLAIN) -> list[str]:
    for g, name in ((f.source, "source"), (f.target, "target")):
        diag = validate(g, mode)
        if diag:
            return [f"{name}: {diag[0]}"]
        if not is_connected(g):
            return [f"{name}: not connected"]
    diag = check_etale(f, mode)
    if diag:
        return diag
    vs = list(f.vertex_map.values())
    if len(set(vs)) != len(vs):
        return ["vertex injectivity: two vertices share an image"]
    bd = [f.arc_map[b] for b in f.source.boundary]
    if len(set(bd)) != len(bd):
        return ["boundary: arc map not injective on the source boundary"]
    seen: dict = {}
    for a in f.source.arcs:
        seen.setdefault(f.arc_map[a], []).append(a)
    for arcs in seen.values():
        if len(arcs) > 1:
            # only a boundary arc may collide with a dart, and then its
            # involute is a dart (the non-injective case of a cut edge)
            for a in arcs:
                if a in f.source.boundary and f.source.inv[a] not in f.source.darts:
                    return ["arc injectivity: collision away from cut edges"]
    return []


def class_of(f: EtaleMap) -> EmbClass:
    return EmbClass(frozenset(f.vertex_map.values()),
                    frozenset(f.arc_map[b] for b in f.source.boundary))


def identity_class(g: Graph) -> EmbClass:
    return EmbClass(frozenset(g.vertices), g.boundary)


def star_class(g: Graph, v: str) -> EmbClass:
    return EmbClass(frozenset([v]), frozenset(g.inv[d] for d in g.nbhd[v]))


def edge_class(g: Graph, a: str) -> EmbClass:
    return EmbClass(frozenset(), frozenset((a, g.inv[a])))


def _cut_boundary(g: Graph, S: frozenset, C: frozenset) -> frozenset:
    out = set()
    for a in g.arcs:
        b = g.inv[a]
        if g.attach.get(b) not in S:
            continue
        if a not in g.darts or g.attach[a] not in S or g.edge(a) in C:
            out.add(a)
    return frozenset(out)


def _cut_connected(g: Graph, S: frozenset, C: frozenset) -> bool:
    parent = {v: v for v in S}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in g.internal_edges:
        if e in C:
            continue
        a, b = sorted(e)
        va, vb = g.attach[a], g.attach[b]
        if va in S and vb in S:
            parent[find(va)] = find(vb)
    return len({find(v) for v in S}) == 1


@lru_cache(maxsize=None)
def enumerate_embeddings(g: Graph) -> tuple[EmbClass, ...]:
    """All elements of Emb(g), sorted."""
    if not is_connected(g):
        raise GraphError("Emb(G) needs a connected graph")
    out = {edge_class(g, a) for a in g.arcs}
    if g.is_nodeless_loop():
        out.add(EmbClass())
    for k in range(1, len(g.vertices) + 1):
        for S in map(frozenset, combinations(g.vertices, k)):
            inner = [e for e in g.internal_edges
                     if all(g.attach[a] in S for a in e)]
            for r in range(len(inner) + 1):
                for C in map(frozenset, combinations(inner, r)):
                    if _cut_connected(g, S, C):
                        out.add(EmbClass(S, _cut_boundary(g, S, C)))
    return tuple(sorted(out))


def is_member(c: EmbClass, g: Graph) -> bool:
    return c in _members(g)


@lru_cache(maxsize=None)
def _members(g: Graph) -> frozenset:
    return frozenset(enumerate_embeddings(g))


def representative(g: Graph, c: EmbClass) -> EtaleMap:
    """Rebuild an embedding in the class ``c``.

    Darts keep their names; a loose end keeps the name of the arc it lands on,
    except when that arc is itself a kept dart, where the cut marker is added.
    """
    if not is_member(c, g):
        raise GraphError(f"{c!r} is not an element of Emb(G)")
    if not c.vertices:
        if not c.boundary:
            return EtaleMap(g, g, {a: a for a in g.arcs}, {})
        a, b = sorted(c.boundary)
        h = Graph([a, b], {a: b, b: a})
        return EtaleMap(h, g, {a: a, b: b}, {})
    S = c.vertices
    darts = [d for v in sorted(S) for d in g.nbhd[v]]
    dset = set(darts)
    arcs, inv, am = list(darts), {}, {d: d for d in darts}
    for d in darts:
        a = g.inv[d]
        if a in c.boundary:
            name = a + CUT if a in dset else a
            arcs.append(name)
            inv[d], inv[name] = name, d
            am[name] = a
        else:
            inv[d] = a
    h = Graph(arcs, inv, {v: g.nbhd[v] for v in S})
    return EtaleMap(h, g, am, {v: v for v in S})


def push_forward(f: EtaleMap, c: EmbClass) -> EmbClass:
    return EmbClass(frozenset(f.vertex_map[v] for v in c.vertices),
                    frozenset(f.arc_map[a] for a in c.boundary))


@lru_cache(maxsize=None)
def down_set(g: Graph, k: EmbClass) -> frozenset:
    rep = representative(g, k)
    return frozenset(push_forward(rep, c) for c in enumerate_embeddings(rep.source))


def leq(h: EmbClass, k: EmbClass, g: Graph) -> bool:
    if not is_member(h, g):
        raise GraphError(f"{h!r} is not an element of Emb(G)")
    return h in down_set(g, k)


def is_vertex_disjoint(h: EmbClass, k: EmbClass) -> bool:
    return not (h.vertices & k.vertices)


def is_union(l: EmbClass, h: EmbClass, k: EmbClass, g: Graph) -> bool:
    return (leq(h, l, g) and leq(k, l, g)
            and l.vertices == h.vertices | k.vertices)


@lru_cache(maxsize=None)
def all_unions(h: EmbClass, k: EmbClass, g: Graph) -> frozenset:
    return frozenset(l for l in enumerate_embeddings(g) if is_union(l, h, k, g))


def pullback_pushout_union(h: EtaleMap, k: EtaleMap) -> EtaleMap | None:
    """Glue ``h`` and ``k`` along their fibre product.

    The pullback is taken separately on arcs, darts and vertices; the
    pushout is then a quotient of the disjoint union of the two sources.
    Returns ``None`` when the pullback is empty.
    """
    H, K, G = h.source, k.source, h.target
    if k.target != G:
        raise GraphError("the two embeddings need a common target")
    ja = [(a, b) for a in H.arcs for b in K.arcs if h.arc_map[a] == k.arc_map[b]]
    jv = [(v, w) for v in H.vertices for w in K.vertices
          if h.vertex_map[v] == k.vertex_map[w]]
    if not ja and not jv:
        return None
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(x, y):
        x, y = find(x), find(y)
        if x != y:
            parent[max(x, y)] = min(x, y)

    for a in H.arcs:
        parent[("h", a)] = ("h", a)
    for b in K.arcs:
        parent[("k", b)] = ("k", b)
    for v in H.vertices:
        parent[("hv", v)] = ("hv", v)
    for w in K.vertices:
        parent[("kv", w)] = ("kv", w)
    for a, b in ja:
        join(("h", a), ("k", b))
    for v, w in jv:
        join(("hv", v), ("kv", w))

    def name(x):
        r = find(x)
        return f"{r[0]}.{r[1]}"

    arcs, inv, am = set(), {}, {}
    nbhd: dict = {}
    verts, vm = set(), {}
    for src, tag, f in ((H, "h", h), (K, "k", k)):
        for a in src.arcs:
            n = name((tag, a))
            arcs.add(n)
            inv[n] = name((tag, src.inv[a]))
            am[n] = f.arc_map[a]
        for v in src.vertices:
            n = name((tag + "v", v))
            verts.add(n)
            vm[n] = f.vertex_map[v]
            nbhd.setdefault(n, set())
        for d, v in src.attach.items():
            nbhd[name((tag + "v", v))].add(name((tag, d)))
    darts = set().union(*nbhd.values()) if nbhd else set()
    # boundary only if boundary in every piece containing the arc; without
    # vertices an arc can be neither dart nor boundary
    inner = {name((tag, a)) for src, tag in ((H, "h"), (K, "k"))
             for a in src.arcs if a not in src.boundary}
    L = Graph(arcs, inv, nbhd, verts, arcs - darts - inner)
    return EtaleMap(L, G, am, vm)


def deletable_vertex(g: Graph, c: EmbClass) -> tuple[str, EmbClass]:
    """A vertex v of the class together with the class on the other vertices.

    Needs a representative with an internal edge.  The returned class is
    either an edge (one-vertex case) or connected on ``c.vertices - {v}``, and
    ``c`` is a union of it with the star at v.
    """
    rep = representative(g, c)
    L = rep.source
    if not L.internal_edges or not L.vertices:
        raise GraphError(f"{c!r} needs a vertex and an internal edge")
    if len(L.vertices) == 1:
        a = min(min(e) for e in L.internal_edges)
        return L.vertices[0], EmbClass(frozenset(), frozenset({rep.arc_map[a], g.inv[rep.arc_map[a]]}))
    for v in L.vertices:
        nb = set(L.nbhd[v])
        S = {L.inv[d] for d in nb} & (L.boundary | nb)
        S_dag = {L.inv[a] for a in S}
        keep_v = [w for w in L.vertices if w != v]
        arcs = [a for a in L.arcs if a not in S | S_dag]
        k = Graph(arcs, {a: L.inv[a] for a in arcs}, {w: L.nbhd[w] for w in keep_v})
        if not is_connected(k):
            continue
        bd = (L.boundary - S) | (nb - S_dag)
        return v, push_forward(rep, EmbClass(frozenset(keep_v), frozenset(bd)))
    raise GraphError("no deletable vertex found")
