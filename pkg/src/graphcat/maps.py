"""Graphical maps in two presentations, and the machinery relating them.

A *new* map is a pair (arc map, table on Emb); a *classical* map is a pair
(arc map, vertex -> Emb class).  ``to_classical`` and ``from_classical``
translate between them.  The second one goes through graph substitution:
the image of a class [f] is read off the inert half of the factorization of
the composite with f.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations, product

from .core import (EXTENDED, PLAIN, Graph, GraphError, canonical_form,
                   is_connected, nodeless_loop, star, validate)
from .embeddings import (EmbClass, EtaleMap, all_unions, check_embedding,
                         class_of, enumerate_embeddings, identity_class,
                         is_member, push_forward, representative, star_class)


class CapError(ValueError):
    pass


class NewGraphMap:
    __slots__ = ("source", "target", "arc_map", "emb_map", "_key", "_hash")

    def __init__(self, source: Graph, target: Graph, arc_map: Mapping,
                 emb_map: Mapping):
        self.source = source
        self.target = target
        self.arc_map = dict(arc_map)
        self.emb_map = dict(emb_map)
        self._key = None
        self._hash = None

    def key(self):
        if self._key is None:
            self._key = (self.source, self.target,
                         tuple(sorted(self.arc_map.items())),
                         tuple(sorted(self.emb_map.items(),
                                      key=lambda kv: kv[0].sort_key())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, NewGraphMap) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"NewGraphMap({dict(sorted(self.arc_map.items()))})"

    def __call__(self, c: EmbClass) -> EmbClass:
        return self.emb_map[c]


@dataclass(frozen=True)
class ClassicalMap:
    source: Graph
    target: Graph
    arc_map: Mapping
    vertex_map: Mapping

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.arc_map.items())),
                     tuple(sorted(self.vertex_map.items()))))


def identity(g: Graph) -> NewGraphMap:
    return NewGraphMap(g, g, {a: a for a in g.arcs},
                       {c: c for c in enumerate_embeddings(g)})


def compose(n: NewGraphMap, m: NewGraphMap) -> NewGraphMap:
    """The composite n ∘ m."""
    if m.target != n.source:
        raise GraphError("compose: target of the first map is not the source of the second")
    return NewGraphMap(m.source, n.target,
                       {a: n.arc_map[b] for a, b in m.arc_map.items()},
                       {c: n.emb_map[d] for c, d in m.emb_map.items()})


def _object_diagnostics(g: Graph, mode: str, name: str) -> list[str]:
    diag = validate(g, mode)
    if diag:
        return [f"{name}: {diag[0]}"]
    if not is_connected(g):
        return [f"{name}: not connected"]
    if mode == PLAIN and g.is_nodeless_loop():
        return [f"{name}: nodeless loops are not plain objects"]
    return []


def _arc_map_diagnostics(s: Graph, t: Graph, am: Mapping) -> list[str]:
    if set(am) != set(s.arcs) or any(b not in t.inv for b in am.values()):
        return ["arc map: not a total function into the target arcs"]
    for a in s.arcs:
        if am[s.inv[a]] != t.inv[am[a]]:
            return [f"arc map: does not commute with the involution at {a}"]
    return []


def check_new_map(m: NewGraphMap, mode: str = PLAIN) -> list[str]:
    s, t = m.source, m.target
    diag = (_object_diagnostics(s, mode, "source")
            or _object_diagnostics(t, mode, "target")
            or _arc_map_diagnostics(s, t, m.arc_map))
    if diag:
        return diag
    emb = enumerate_embeddings(s)
    if set(m.emb_map) != set(emb):
        return ["emb map: not total on Emb(source)"]
    if any(not is_member(c, t) for c in m.emb_map.values()):
        return ["emb map: value outside Emb(target)"]
    for c in emb:
        if c.is_edge and not m(c).is_edge:
            return [f"(i): edge class {c!r} not sent to an edge class"]
    for c in emb:
        image = [m.arc_map[a] for a in c.boundary]
        if len(set(image)) != len(image) or set(image) != m(c).boundary:
            return [f"(iv): boundary of {c!r} not carried bijectively"]
    for h, k in combinations(emb, 2):
        if not (h.vertices & k.vertices) and m(h).vertices & m(k).vertices:
            return [f"(iii): disjoint pair {h!r}, {k!r} not sent to a disjoint pair"]
    for i, h in enumerate(emb):
        for k in emb[i:]:
            targets = all_unions(m(h), m(k), t)
            for l in all_unions(h, k, s):
                if m(l) not in targets:
                    return [f"(ii): union {l!r} of {h!r}, {k!r} not preserved"]
    return []


def check_classical(c: ClassicalMap, mode: str = PLAIN) -> list[str]:
    s, t = c.source, c.target
    diag = (_object_diagnostics(s, mode, "source")
            or _object_diagnostics(t, mode, "target")
            or _arc_map_diagnostics(s, t, c.arc_map))
    if diag:
        return diag
    if set(c.vertex_map) != set(s.vertices):
        return ["vertex map: not total"]
    for v, cl in c.vertex_map.items():
        if not is_member(cl, t):
            return [f"vertex map: image of {v} outside Emb(target)"]
    for v, w in combinations(s.vertices, 2):
        if c.vertex_map[v].vertices & c.vertex_map[w].vertices:
            return [f"(i): images of {v} and {w} overlap"]
    for v in s.vertices:
        image = [c.arc_map[s.inv[d]] for d in s.nbhd[v]]
        if len(set(image)) != len(image) or set(image) != c.vertex_map[v].boundary:
            return [f"(ii): no boundary bijection at {v}"]
    if not s.boundary and all(cl.is_edge for cl in c.vertex_map.values()):
        if mode == PLAIN:
            return ["(iii): empty boundary and every vertex sent to an edge"]
        if not t.is_nodeless_loop():
            return ["(iii'): all vertices sent to edges but the target is not a nodeless loop"]
    return []


def to_classical(m: NewGraphMap) -> ClassicalMap:
    s = m.source
    return ClassicalMap(s, m.target, dict(m.arc_map),
                        {v: m(star_class(s, v)) for v in s.vertices})


# substitution

@dataclass(frozen=True)
class Substitution:
    graph: Graph
    pieces: Mapping        # vertex -> EtaleMap from the piece into ``graph``
    outer: Mapping         # arc of the host -> arc of ``graph``


def substitute(g: Graph, assignment: Mapping, mode: str = PLAIN) -> Substitution:
    """Replace each vertex v of g by a graph H_v.

    ``assignment[v] = (H_v, beta_v)`` where ``beta_v`` sends each dart d at v
    to the loose end of H_v that takes the place of d†.
    """
    if not g.vertices:
        return Substitution(g, {}, {a: a for a in g.arcs})
    if set(assignment) != set(g.vertices):
        raise GraphError("substitute: the assignment must cover every vertex")
    H, beta, back = {}, {}, {}
    for v in g.vertices:
        h, b = assignment[v]
        b = dict(b)
        if not is_connected(h):
            raise GraphError(f"substitute: piece at {v} is not connected")
        if set(b) != set(g.nbhd[v]) or sorted(b.values()) != sorted(h.boundary):
            raise GraphError(f"substitute: arity mismatch at {v}")
        H[v], beta[v] = h, b
        back[v] = {y: d for d, y in b.items()}

    if not g.arcs:
        # g is an isolated vertex and the substitution is the piece itself
        (v,) = g.vertices
        h = H[v]
        return Substitution(h, {v: EtaleMap(h, h, {a: a for a in h.arcs},
                                            {w: w for w in h.vertices})}, {})

    def name(v, x):
        return f"{v}.{x}"

    nodeless = not g.boundary and all(not h.vertices for h in H.values())
    if nodeless:
        if mode == PLAIN:
            raise GraphError("substitute: the result would be a nodeless loop")
        return _substitute_nodeless(g, H, beta, back)

    def outward(v, b):
        while True:
            a = g.inv[back[v][b]]
            if a not in g.darts:
                return a
            w = g.attach[a]
            z = H[w].inv[beta[w][a]]
            if z in H[w].darts:
                return name(w, z)
            v, b = w, z

    arcs, inv, nbhd = list(g.boundary), {}, {}
    for v, h in H.items():
        for x in h.darts:
            y = h.inv[x]
            arcs.append(name(v, x))
            inv[name(v, x)] = name(v, y) if y in h.darts else outward(v, y)
        for w in h.vertices:
            nbhd[name(v, w)] = [name(v, x) for x in h.nbhd[w]]
    for a in g.boundary:
        d = g.inv[a]
        w = g.attach[d]
        z = H[w].inv[beta[w][d]]
        inv[a] = name(w, z) if z in H[w].darts else outward(w, z)
    if len(set(arcs)) != len(arcs):
        raise GraphError("substitute: name clash between host boundary and piece arcs")
    k = Graph(arcs, inv, nbhd)
    pieces = {}
    for v, h in H.items():
        am = {x: (name(v, x) if x in h.darts else outward(v, x)) for x in h.arcs}
        pieces[v] = EtaleMap(h, k, am, {w: name(v, w) for w in h.vertices})
    outer = {a: a for a in g.boundary}
    for d, v in g.attach.items():
        outer[d] = k.inv[outward(v, beta[v][d])]
    return Substitution(k, pieces, outer)


def _substitute_nodeless(g, H, beta, back) -> Substitution:
    def step(v, b):
        a = g.inv[back[v][b]]
        w = g.attach[a]
        return w, H[w].inv[beta[w][a]]

    v0 = g.vertices[0]
    p = (v0, min(H[v0].arcs))
    orbit = set()
    while p not in orbit:
        orbit.add(p)
        p = step(*p)
    k = nodeless_loop()
    o, o_bar = "o", k.inv["o"]

    def arc(v, b):
        return o if (v, b) in orbit else o_bar

    pieces = {v: EtaleMap(h, k, {b: arc(v, b) for b in h.arcs}, {})
              for v, h in H.items()}
    outer = {d: k.inv[arc(v, beta[v][d])] for d, v in g.attach.items()}
    return Substitution(k, pieces, outer)


def _piece_data(c: ClassicalMap, v: str):
    """Representative of phi_1(v) together with the boundary bijection."""
    rep = representative(c.target, c.vertex_map[v])
    at = {rep.arc_map[b]: b for b in rep.source.boundary}
    beta = {d: at[c.arc_map[c.source.inv[d]]] for d in c.source.nbhd[v]}
    return rep, beta


def _factor_classical(c: ClassicalMap, mode: str):
    """Return (substitution, inert embedding into the target, reps)."""
    s, t = c.source, c.target
    reps = {}
    assignment = {}
    for v in s.vertices:
        rep, beta = _piece_data(c, v)
        reps[v] = rep
        assignment[v] = (rep.source, beta)
    sub = substitute(s, assignment, mode)
    if not s.vertices:
        return sub, EtaleMap(s, t, dict(c.arc_map), {}), reps
    am = {a: c.arc_map[a] for a in s.boundary}
    vm = {}
    for v, rep in reps.items():
        piece = sub.pieces[v]
        for x in rep.source.arcs:
            am.setdefault(piece.arc_map[x], rep.arc_map[x])
        for w in rep.source.vertices:
            vm[piece.vertex_map[w]] = rep.vertex_map[w]
    return sub, EtaleMap(sub.graph, t, am, vm), reps


def _precompose(c: ClassicalMap, f: EtaleMap) -> ClassicalMap:
    return ClassicalMap(f.source, c.target,
                        {a: c.arc_map[b] for a, b in f.arc_map.items()},
                        {u: c.vertex_map[w] for u, w in f.vertex_map.items()})


def inert_class(c: ClassicalMap, mode: str = EXTENDED) -> EmbClass:
    """Class of the inert half of the factorization of ``c``."""
    s = c.source
    if not s.vertices:
        return EmbClass(frozenset(), frozenset(c.arc_map[a] for a in s.boundary))
    if not s.boundary and all(cl.is_edge for cl in c.vertex_map.values()):
        return EmbClass()
    _, inert, _ = _factor_classical(c, mode)
    return class_of(inert)


def from_classical(c: ClassicalMap, route: str = "substitution") -> NewGraphMap:
    """Construction 𝔑.

    ``route="substitution"`` builds each substituted graph explicitly;
    ``route="formula"`` reads the same class off directly as the union of
    the vertex images together with the image of the boundary.
    """
    s = c.source
    emb = {}
    for cl in enumerate_embeddings(s):
        if route == "formula":
            vs = frozenset().union(*(c.vertex_map[v].vertices for v in cl.vertices))
            emb[cl] = EmbClass(vs, frozenset(c.arc_map[a] for a in cl.boundary))
        else:
            emb[cl] = inert_class(_precompose(c, representative(s, cl)))
    return NewGraphMap(s, c.target, c.arc_map, emb)


def from_embedding(f: EtaleMap) -> NewGraphMap:
    return NewGraphMap(f.source, f.target, f.arc_map,
                       {c: push_forward(f, c) for c in enumerate_embeddings(f.source)})


def compose_classical(d: ClassicalMap, c: ClassicalMap) -> ClassicalMap:
    """The composite d ∘ c computed by substitution, without 𝔑."""
    if c.target != d.source:
        raise GraphError("compose: mismatched classical maps")
    vm = {}
    for v in c.source.vertices:
        rep = representative(c.target, c.vertex_map[v])
        vm[v] = inert_class(_precompose(d, rep))
    return ClassicalMap(c.source, d.target,
                        {a: d.arc_map[b] for a, b in c.arc_map.items()}, vm)


def is_active(m: NewGraphMap) -> bool:
    return m(identity_class(m.source)) == identity_class(m.target)


def underlying_embedding(m: NewGraphMap, mode: str = EXTENDED) -> EtaleMap | None:
    s = m.source
    vm = {}
    for v in s.vertices:
        img = m(star_class(s, v))
        if len(img.vertices) != 1:
            return None
        (w,) = img.vertices
        if img != star_class(m.target, w):
            return None
        vm[v] = w
    f = EtaleMap(s, m.target, dict(m.arc_map), vm)
    if check_embedding(f, mode):
        return None
    return f


def is_inert(m: NewGraphMap) -> bool:
    f = underlying_embedding(m)
    return f is not None and from_embedding(f) == m


def classify(m: NewGraphMap) -> dict:
    return {"active": is_active(m), "inert": is_inert(m)}


@dataclass(frozen=True)
class Factorization:
    active: NewGraphMap
    inert: NewGraphMap
    middle: Graph


def _relabel_map_source(m: NewGraphMap, g: Graph, arcs, verts) -> NewGraphMap:
    def cl(c):
        return EmbClass(frozenset(verts[v] for v in c.vertices),
                        frozenset(arcs[a] for a in c.boundary))
    return NewGraphMap(g, m.target, {arcs[a]: b for a, b in m.arc_map.items()},
                       {cl(c): d for c, d in m.emb_map.items()})


def _relabel_map_target(m: NewGraphMap, g: Graph, arcs, verts) -> NewGraphMap:
    def cl(c):
        return EmbClass(frozenset(verts[v] for v in c.vertices),
                        frozenset(arcs[a] for a in c.boundary))
    return NewGraphMap(m.source, g, {a: arcs[b] for a, b in m.arc_map.items()},
                       {c: cl(d) for c, d in m.emb_map.items()})


def factor(m: NewGraphMap, mode: str = EXTENDED) -> Factorization:
    """Active-inert factorization through a canonically labeled middle object."""
    c = to_classical(m)
    s, t = m.source, m.target
    if t.is_nodeless_loop() and not s.boundary and all(
            cl.is_edge for cl in c.vertex_map.values()) and s.vertices:
        k = t
        active = m
        inert = identity(t)
    else:
        sub, emb, _ = _factor_classical(c, mode)
        k = sub.graph
        alpha = ClassicalMap(s, k, dict(sub.outer),
                             {v: class_of(p) for v, p in sub.pieces.items()})
        active = from_classical(alpha)
        inert = from_embedding(emb)
    canon, arcs, verts = canonical_form(k)
    active = _relabel_map_target(active, canon, arcs, verts)
    inert = _relabel_map_source(inert, canon, arcs, verts)
    return Factorization(active, inert, canon)


def complement(f: EtaleMap) -> tuple[Graph, str, NewGraphMap]:
    """Collapse the image of ``f`` to a single new vertex.

    Returns the complement graph K, its distinguished vertex and the active
    map K -> target whose value at the new vertex is the class of f.
    """
    G, H = f.source, f.target
    vG = "vG"
    while vG in H.nbhd:
        vG += "'"
    if not G.vertices:
        a0, a1 = sorted(f.arc_map[a] for a in G.arcs)
        d0, d1 = a0 + "^", a1 + "^"
        inv = dict(H.inv)
        inv[a0], inv[d0], inv[a1], inv[d1] = d0, a0, d1, a1
        nbhd = {v: list(ds) for v, ds in H.nbhd.items()}
        nbhd[vG] = [d0, d1]
        K = Graph(list(H.arcs) + [d0, d1], inv, nbhd)
        am = {a: a for a in H.arcs}
        am[d0], am[d1] = a1, a0
        alpha = ClassicalMap(K, H, am, {v: star_class(H, v) for v in H.vertices}
                             | {vG: class_of(f)})
        return K, vG, from_classical(alpha)
    removed = {f.arc_map[d] for d in G.darts if G.inv[d] in G.darts}
    image = set(f.vertex_map.values())
    nbhd = {v: list(H.nbhd[v]) for v in H.vertices if v not in image}
    nbhd[vG] = [d for v in sorted(image) for d in H.nbhd[v] if d not in removed]
    arcs = [a for a in H.arcs if a not in removed]
    K = Graph(arcs, {a: H.inv[a] for a in arcs}, nbhd, boundary=H.boundary)
    vm = {v: star_class(H, v) for v in K.vertices if v != vG}
    vm[vG] = class_of(f)
    alpha = ClassicalMap(K, H, {a: a for a in arcs}, vm)
    return K, vG, from_classical(alpha)


# enumeration

def _check_caps(g: Graph, max_vertices, max_arcs):
    if max_vertices is not None and len(g.vertices) > max_vertices:
        raise CapError(f"graph has {len(g.vertices)} vertices, cap is {max_vertices}")
    if max_arcs is not None and len(g.arcs) > max_arcs:
        raise CapError(f"graph has {len(g.arcs)} arcs, cap is {max_arcs}")


def enumerate_classical(g: Graph, h: Graph, category: str = "U",
                        max_vertices: int | None = 3, max_arcs: int | None = 8):
    """All classical graphical maps g -> h, deterministically ordered."""
    mode = EXTENDED if category == "Utilde" else PLAIN
    for x in (g, h):
        _check_caps(x, max_vertices, max_arcs)
        if _object_diagnostics(x, mode, "object"):
            raise GraphError(_object_diagnostics(x, mode, "object")[0])
    by_boundary: dict = {}
    for c in enumerate_embeddings(h):
        by_boundary.setdefault(c.boundary, []).append(c)
    edges = list(g.edges)
    # order edges so that each vertex completes as early as possible
    order, seen = [], set()
    for v in g.vertices:
        for d in g.nbhd[v]:
            e = g.edge(d)
            if e not in seen:
                seen.add(e)
                order.append(e)
    order += [e for e in edges if e not in seen]
    done_at: dict = {}
    for v in g.vertices:
        idx = max((order.index(g.edge(d)) for d in g.nbhd[v]), default=-1)
        done_at.setdefault(idx, []).append(v)
    out = []
    am: dict = {}
    cands: dict = {}

    def vertex_ok(v):
        image = [am[g.inv[d]] for d in g.nbhd[v]]
        key = frozenset(image)
        if len(key) != len(image) or key not in by_boundary:
            return False
        cands[v] = by_boundary[key]
        return True

    def finish():
        verts = list(g.vertices)
        for choice in product(*(cands[v] for v in verts)):
            vm = dict(zip(verts, choice))
            c = ClassicalMap(g, h, dict(am), vm)
            if not check_classical(c, mode):
                out.append(c)

    def rec(i):
        if i == len(order):
            finish()
            return
        a = min(order[i])
        for b in h.arcs:
            am[a], am[g.inv[a]] = b, h.inv[b]
            if all(vertex_ok(v) for v in done_at.get(i, ())):
                rec(i + 1)
        am.pop(a, None)
        am.pop(g.inv[a], None)

    if all(vertex_ok(v) for v in done_at.get(-1, ())):
        rec(0)
    return out


def enumerate_maps(g: Graph, h: Graph, category: str = "U",
                   max_vertices: int | None = 3, max_arcs: int | None = 8,
                   route: str = "substitution") -> list[NewGraphMap]:
    return [from_classical(c, route)
            for c in enumerate_classical(g, h, category, max_vertices, max_arcs)]


def active_star_maps(h: Graph) -> list[NewGraphMap]:
    n = len(h.boundary)
    return [m for m in enumerate_maps(star(n), h, max_vertices=None, max_arcs=None)
            if is_active(m)]
