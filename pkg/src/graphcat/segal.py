"""Finite catalogs of graphs, presheaves on them and the Segal condition.

A catalog is a finite full-ish piece of one of the graph categories: some
objects and every map between them.  Presheaves assign a finite set of
string tokens to each object and a restriction function to each morphism.
"""
from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .core import EXTENDED, PLAIN, Graph, GraphError, is_tree
from .directed import (DirectedGraph, Orientation, is_acyclic,
                       is_properadic, orientations_of, restrict_orientation,
                       rooted_orientation)
from .embeddings import edge_class, identity_class, star_class
from .maps import (ClassicalMap, NewGraphMap, _piece_data, compose,
                   enumerate_maps, from_classical, from_embedding, is_active,
                   is_inert, substitute)
from .embeddings import class_of


# catalogs

@dataclass(frozen=True)
class Obj:
    graph: Graph
    orientation: Orientation | None = None


@dataclass(frozen=True, eq=False)
class Morphism:
    name: str
    source: str
    target: str
    map: NewGraphMap


def is_star_graph(g: Graph) -> bool:
    if len(g.vertices) != 1:
        return False
    (v,) = g.vertices
    return all(g.inv[d] in g.boundary for d in g.nbhd[v]) and \
        len(g.arcs) == 2 * g.valence(v)


def is_elementary_graph(g: Graph) -> bool:
    return g.is_edge_graph() or is_star_graph(g)


def orientation_token(g: Graph, x: Orientation) -> str:
    return "".join("+" if x[a] > 0 else "-" for a in g.arcs)


class Catalog:
    """Objects by name, and every morphism between them."""

    def __init__(self, objects: Mapping[str, Obj], homs: Mapping, mode: str = PLAIN):
        self.objects = dict(objects)
        self.mode = mode
        self.homs: dict = {}
        self.morphisms: dict = {}
        self._index: dict = {}
        for (a, b), maps in sorted(homs.items()):
            lst = []
            for i, m in enumerate(maps):
                mor = Morphism(f"{a}>{b}#{i}", a, b, m)
                lst.append(mor)
                self.morphisms[mor.name] = mor
                self._index[(a, b, m)] = mor
            self.homs[(a, b)] = lst
        self._kinds: dict = {}
        self._covers: dict = {}

    def __repr__(self):
        return f"Catalog({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def graph(self, name: str) -> Graph:
        return self.objects[name].graph

    def hom(self, a: str, b: str) -> list[Morphism]:
        return self.homs.get((a, b), [])

    def into(self, b: str) -> list[Morphism]:
        return [m for a in self.objects for m in self.hom(a, b)]

    def find(self, a: str, b: str, m: NewGraphMap) -> Morphism | None:
        return self._index.get((a, b, m))

    def compose(self, n: Morphism, m: Morphism) -> Morphism:
        out = self.find(m.source, n.target, compose(n.map, m.map))
        if out is None:
            raise GraphError("catalog is not closed under composition")
        return out

    def identity(self, a: str) -> Morphism:
        g = self.graph(a)
        for m in self.hom(a, a):
            if all(m.map.arc_map[x] == x for x in g.arcs) and \
                    all(k == v for k, v in m.map.emb_map.items()):
                return m
        raise GraphError(f"no identity on {a}")

    def kind(self, m: Morphism) -> dict:
        if m.name not in self._kinds:
            self._kinds[m.name] = {"active": is_active(m.map), "inert": is_inert(m.map)}
        return self._kinds[m.name]

    def is_inert(self, m: Morphism) -> bool:
        return self.kind(m)["inert"]

    def is_active(self, m: Morphism) -> bool:
        return self.kind(m)["active"]

    @cached_property
    def elementary(self) -> tuple[str, ...]:
        return tuple(a for a, o in self.objects.items() if is_elementary_graph(o.graph))

    def elementary_inerts(self, c: str) -> list[Morphism]:
        return [m for a in self.elementary for m in self.hom(a, c) if self.is_inert(m)]

    def skeleton(self, c: str) -> Skeleton:
        """One elementary inert per vertex and per edge of c, with links.

        Raises when the catalog lacks the elementary objects c needs.
        """
        if c in self._covers:
            return self._covers[c]
        g = self.graph(c)
        inerts = self.elementary_inerts(c)
        by_class: dict = {}
        for m in inerts:
            by_class.setdefault(m.map(identity_class(m.map.source)), []).append(m)
        stars, edges = {}, {}
        for v in g.vertices:
            found = by_class.get(star_class(g, v))
            if not found:
                raise GraphError(f"catalog lacks an elementary cover of vertex {v} of {c}")
            stars[v] = found[0]
        for e in g.edges:
            found = by_class.get(edge_class(g, min(e)))
            if not found:
                raise GraphError(f"catalog lacks an elementary cover of edge {sorted(e)} of {c}")
            edges[e] = found[0]
        links = []
        for e, k in edges.items():
            for v, s in stars.items():
                for j in self.hom(k.source, s.source):
                    if compose(s.map, j.map) == k.map:
                        links.append((e, v, j))
        sk = Skeleton(c, stars, edges, links)
        self._covers[c] = sk
        return sk

    def cover_category(self, c: str):
        """All elementary inerts into c and all maps between them over c."""
        objs = self.elementary_inerts(c)
        arrows = []
        for k in objs:
            for k2 in objs:
                for j in self.hom(k.source, k2.source):
                    if self.is_inert(j) and compose(k2.map, j.map) == k.map:
                        arrows.append((k, k2, j))
        return objs, arrows


@dataclass
class Skeleton:
    obj: str
    stars: dict          # vertex -> inert morphism from a star
    edges: dict          # edge -> inert morphism from an edge object
    links: list          # (edge, vertex, morphism edge-object -> star-object)


def plain_catalog(graphs: Mapping[str, Graph], category: str = "U",
                  **caps) -> Catalog:
    mode = EXTENDED if category == "Utilde" else PLAIN
    objects = {a: Obj(g) for a, g in graphs.items()}
    homs = {(a, b): enumerate_maps(g, h, category, **caps)
            for a, g in graphs.items() for b, h in graphs.items()}
    return Catalog(objects, homs, mode)


def oriented_catalog(base: Catalog, keep: Callable | None = None,
                     maps: Callable | None = None) -> Catalog:
    """Oriented objects over ``base`` with the maps that respect signs.

    ``keep(name, directed_graph)`` filters objects and ``maps(m, xs, xt)``
    filters morphisms (used for the properadic subcategories).
    """
    objects, over = {}, {}
    for a, o in base.objects.items():
        for x in orientations_of(o.graph):
            dg = DirectedGraph(o.graph, x)
            if keep is not None and not keep(a, dg):
                continue
            name = f"{a}[{orientation_token(o.graph, x)}]"
            objects[name] = Obj(o.graph, x)
            over.setdefault(a, []).append(name)
    homs: dict = {}
    for (a, b), mors in base.homs.items():
        for nb in over.get(b, []):
            xt = objects[nb].orientation
            for mor in mors:
                xs = restrict_orientation(mor.map, xt)
                na = f"{a}[{orientation_token(base.graph(a), xs)}]"
                if na not in objects:
                    continue
                if maps is not None and not maps(mor.map, xs, xt):
                    continue
                homs.setdefault((na, nb), []).append(mor.map)
    cat = Catalog(objects, homs, base.mode)
    cat.base = base
    cat.over = {n: a for a, ns in over.items() for n in ns}
    return cat


def full_subcatalog(cat: Catalog, names: Iterable[str],
                    maps: Callable | None = None) -> Catalog:
    names = [n for n in cat.objects if n in set(names)]
    homs = {}
    for a in names:
        for b in names:
            ms = [m.map for m in cat.hom(a, b)]
            if maps is not None:
                ms = [m for m in ms if maps(m, cat.objects[a], cat.objects[b])]
            homs[(a, b)] = ms
    sub = Catalog({n: cat.objects[n] for n in names}, homs, cat.mode)
    if hasattr(cat, "over"):
        sub.over = {n: cat.over[n] for n in names}
        sub.base = cat.base
    return sub


def dendroidal_catalog(trees: Mapping[str, Graph], **caps) -> tuple[Catalog, Catalog]:
    """The rooted-tree catalog and the cyclic (non-empty boundary) tree catalog."""
    cyc = plain_catalog({a: t for a, t in trees.items() if t.boundary}, **caps)
    objects, over = {}, {}
    for a, o in cyc.objects.items():
        for r in sorted(o.graph.boundary):
            name = f"{a}@{r}"
            objects[name] = Obj(o.graph, rooted_orientation(o.graph, r))
            over[name] = a
    homs: dict = {}
    for na, oa in objects.items():
        for nb, ob in objects.items():
            homs[(na, nb)] = [m.map for m in cyc.hom(over[na], over[nb])
                              if restrict_orientation(m.map, ob.orientation) == oa.orientation]
    omega = Catalog(objects, homs)
    omega.base = cyc
    omega.over = over
    return omega, cyc


# functors

class CatalogFunctor:
    def __init__(self, source: Catalog, target: Catalog, on_objects: Mapping[str, str]):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)

    def __call__(self, m: Morphism) -> Morphism:
        out = self.target.find(self.on_objects[m.source], self.on_objects[m.target], m.map)
        if out is None:
            raise GraphError(f"functor: no image for {m.name}")
        return out


def forgetful(oriented: Catalog, base: Catalog | None = None) -> CatalogFunctor:
    return CatalogFunctor(oriented, base or oriented.base, oriented.over)


def inclusion(sub: Catalog, cat: Catalog) -> CatalogFunctor:
    return CatalogFunctor(sub, cat, {a: a for a in sub.objects})


def oriented_inclusion(sub: Catalog, cat: Catalog) -> CatalogFunctor:
    """Inclusion between oriented catalogs, matching objects by data."""
    where = {(o.graph, o.orientation): n for n, o in cat.objects.items()}
    return CatalogFunctor(sub, cat, {n: where[(o.graph, o.orientation)]
                                     for n, o in sub.objects.items()})


def lifts(f: CatalogFunctor, c: str, psi: Morphism) -> list[Morphism]:
    """Morphisms into c sent by f to psi."""
    index = f.__dict__.setdefault("_lifts", {})
    if c not in index:
        by_map: dict = {}
        for m in f.source.into(c):
            by_map.setdefault(m.map, []).append(m)
        index[c] = by_map
    return [m for m in index[c].get(psi.map, ()) if f(m) is psi]


def discrete_fibration_report(f: CatalogFunctor) -> list[str]:
    problems = []
    for c, fc in f.on_objects.items():
        for psi in f.target.into(fc):
            found = lifts(f, c, psi)
            if len(found) != 1:
                problems.append(f"{psi.name} into {c}: {len(found)} lifts")
            elif f.target.is_inert(psi) and not f.source.is_inert(found[0]):
                problems.append(f"{psi.name} into {c}: lift not inert")
    return problems


def inert_lifting_report(f: CatalogFunctor) -> list[str]:
    problems = []
    for c, fc in f.on_objects.items():
        for psi in f.target.into(fc):
            if not f.target.is_inert(psi):
                continue
            found = lifts(f, c, psi)
            if len(found) != 1 or not f.source.is_inert(found[0]):
                problems.append(f"inert {psi.name} into {c}")
    return problems


def strong_segal_report(f: CatalogFunctor) -> list[str]:
    problems = []
    for c, fc in f.on_objects.items():
        objs, arrows = f.source.cover_category(c)
        tobjs, tarrows = f.target.cover_category(fc)
        imgs = [f(k) for k in objs]
        if len(set(map(id, imgs))) != len(imgs) or \
                set(map(id, imgs)) != set(map(id, tobjs)):
            problems.append(f"{c}: elementary covers not in bijection")
            continue
        aimg = {(id(f(k)), id(f(k2)), id(f(j))) for k, k2, j in arrows}
        timg = {(id(k), id(k2), id(j)) for k, k2, j in tarrows}
        if len(aimg) != len(arrows) or aimg != timg:
            problems.append(f"{c}: cover morphisms not in bijection")
    return problems


# presheaves

class Presheaf:
    """A presheaf on a catalog: tokens per object, restriction per morphism."""

    catalog: Catalog

    def elements(self, obj: str) -> tuple[str, ...]:
        raise NotImplementedError

    def restrict(self, m: Morphism, e: str) -> str:
        raise NotImplementedError


class TablePresheaf(Presheaf):
    def __init__(self, catalog: Catalog, elements: Mapping, tables: Mapping):
        self.catalog = catalog
        self._elements = {a: tuple(sorted(v)) for a, v in elements.items()}
        self.tables = {k: dict(v) for k, v in tables.items()}

    def elements(self, obj):
        return self._elements[obj]

    def restrict(self, m, e):
        return self.tables[m.name][e]

    def __eq__(self, other):
        return (isinstance(other, TablePresheaf) and self._elements == other._elements
                and self.tables == other.tables)


def materialize(p: Presheaf) -> TablePresheaf:
    cat = p.catalog
    elements = {a: p.elements(a) for a in cat.objects}
    tables = {m.name: {e: p.restrict(m, e) for e in elements[m.target]}
              for m in cat.morphisms.values()}
    return TablePresheaf(cat, elements, tables)


class Terminal(Presheaf):
    def __init__(self, catalog):
        self.catalog = catalog

    def elements(self, obj):
        return ("*",)

    def restrict(self, m, e):
        return "*"


class OrientationPresheaf(Presheaf):
    """𝔬: orientations of the underlying graph, as sign strings."""

    def __init__(self, catalog):
        self.catalog = catalog

    def elements(self, obj):
        g = self.catalog.graph(obj)
        return tuple(sorted(orientation_token(g, x) for x in orientations_of(g)))

    def restrict(self, m, e):
        g, h = m.map.source, m.map.target
        x = Orientation(dict(zip(h.arcs, (1 if c == "+" else -1 for c in e))))
        return orientation_token(g, restrict_orientation(m.map, x))


class Coloring(Presheaf):
    """Edge colourings together with vertex weights in Z/k.

    Colours pull back along the edge map; the weight of a vertex is the sum
    of the weights of the vertices in its image.  Both pieces of data are
    determined by stars and edges, so the result is Segal.
    """

    def __init__(self, catalog, colors: int, modulus: int):
        self.catalog = catalog
        self.colors = colors
        self.modulus = modulus
        self._cache: dict = {}

    def elements(self, obj):
        if obj not in self._cache:
            g = self.catalog.graph(obj)
            out = [""]
            for _ in g.edges:
                out = [s + str(c) for s in out for c in range(self.colors)]
            ws = [""]
            for _ in g.vertices:
                ws = [s + str(w) for s in ws for w in range(self.modulus)]
            self._cache[obj] = tuple(sorted(f"{c}|{w}" for c in out for w in ws))
        return self._cache[obj]

    def restrict(self, m, e):
        g, h = m.map.source, m.map.target
        cols, ws = e.split("|")
        color = dict(zip(h.edges, cols))
        weight = dict(zip(h.vertices, (int(w) for w in ws)))
        new_cols = "".join(color[h.edge(m.map.arc_map[min(d)])] for d in g.edges)
        new_ws = "".join(
            str(sum(weight[w] for w in m.map(star_class(g, v)).vertices) % self.modulus)
            for v in g.vertices)
        return f"{new_cols}|{new_ws}"


class Coproduct(Presheaf):
    def __init__(self, parts: list[Presheaf]):
        self.parts = parts
        self.catalog = parts[0].catalog

    def elements(self, obj):
        return tuple(f"{i}:{e}" for i, p in enumerate(self.parts) for e in p.elements(obj))

    def restrict(self, m, e):
        i, rest = e.split(":", 1)
        return f"{i}:{self.parts[int(i)].restrict(m, rest)}"


class Truncated(Presheaf):
    """``p`` with every object receiving a map from ``seeds`` emptied."""

    def __init__(self, p: Presheaf, seeds: Iterable[str]):
        self.p = p
        self.catalog = p.catalog
        empty = set(seeds)
        todo = list(empty)
        while todo:
            a = todo.pop()
            for b in self.catalog.objects:
                if b not in empty and self.catalog.hom(a, b):
                    empty.add(b)
                    todo.append(b)
        self.empty = frozenset(empty)

    def elements(self, obj):
        return () if obj in self.empty else self.p.elements(obj)

    def restrict(self, m, e):
        return self.p.restrict(m, e)


def generated(p: Presheaf, obj: str, e: str) -> TablePresheaf:
    """The sub-presheaf of ``p`` generated by one element at ``obj``."""
    cat = p.catalog
    els: dict = {a: set() for a in cat.objects}
    for m in cat.into(obj):
        els[m.source].add(p.restrict(m, e))
    tables = {m.name: {x: p.restrict(m, x) for x in els[m.target]}
              for m in cat.morphisms.values()}
    return TablePresheaf(cat, els, tables)


class Representable(Presheaf):
    def __init__(self, catalog, obj: str):
        self.catalog = catalog
        self.obj = obj

    def elements(self, obj):
        return tuple(m.name for m in self.catalog.hom(obj, self.obj))

    def restrict(self, m, e):
        return self.catalog.compose(self.catalog.morphisms[e], m).name


class Restricted(Presheaf):
    """f*M."""

    def __init__(self, f: CatalogFunctor, M: Presheaf):
        self.f, self.M = f, M
        self.catalog = f.source

    def elements(self, obj):
        return self.M.elements(self.f.on_objects[obj])

    def restrict(self, m, e):
        return self.M.restrict(self.f(m), e)


class LeftKan(Presheaf):
    """f!Z along a discrete fibration: sum of Z over each fibre."""

    def __init__(self, f: CatalogFunctor, Z: Presheaf):
        self.f, self.Z = f, Z
        self.catalog = f.target
        self.fibres: dict = {}
        for c, fc in f.on_objects.items():
            self.fibres.setdefault(fc, []).append(c)

    def elements(self, obj):
        return tuple(f"{c}/{z}" for c in self.fibres.get(obj, ())
                     for z in self.Z.elements(c))

    def restrict(self, m, e):
        c, z = e.split("/", 1)
        found = lifts(self.f, c, m)
        if len(found) != 1:
            raise GraphError(f"no unique lift of {m.name} at {c}")
        lift = found[0]
        return f"{lift.source}/{self.Z.restrict(lift, z)}"


def restrict_presheaf(f: CatalogFunctor, M: Presheaf) -> Presheaf:
    return Restricted(f, M)


def lke_presheaf(f: CatalogFunctor, Z: Presheaf) -> Presheaf:
    return LeftKan(f, Z)


def lke_dendroidal_to_cyclic(f: CatalogFunctor, Z: Presheaf) -> Presheaf:
    for a in f.target.objects:
        if not f.target.graph(a).boundary:
            raise GraphError("cyclic trees need a non-empty boundary")
    return LeftKan(f, Z)


def random_segal(catalog: Catalog, rng: random.Random) -> Presheaf:
    parts = [Coloring(catalog, rng.randint(1, 2), rng.randint(1, 2))
             for _ in range(rng.randint(1, 2))]
    return parts[0] if len(parts) == 1 else Coproduct(parts)


def functoriality_report(p: Presheaf, limit: int | None = None) -> list[str]:
    cat = p.catalog
    problems = []
    for a in cat.objects:
        idm = cat.identity(a)
        if any(p.restrict(idm, e) != e for e in p.elements(a)):
            problems.append(f"identity on {a}")
    count = 0
    for (a, b), ms in cat.homs.items():
        for m in ms:
            for n in cat.into(a):
                if limit is not None and count >= limit:
                    return problems
                count += 1
                nm = cat.compose(m, n)
                for e in p.elements(b):
                    if p.restrict(nm, e) != p.restrict(n, p.restrict(m, e)):
                        problems.append(f"{m.name} after {n.name}")
                        break
    return problems


# Segal condition

def segal_limit(p: Presheaf, c: str, flat: bool = False) -> set:
    """Compatible families over the elementary covers of c, as tuples."""
    cat = p.catalog
    sk = cat.skeleton(c)
    g = cat.graph(c)
    verts = list(g.vertices)
    edges = [] if flat else list(sk.edges)
    if not verts:
        if flat:
            return {()}
        (e,) = edges
        return {(z,) for z in p.elements(sk.edges[e].source)}
    links: dict = {}
    for e, v, j in sk.links:
        links.setdefault(v, []).append((e, j))
    out = set()
    assign: dict = {}

    def rec(i):
        if i == len(verts):
            out.add(tuple(assign[v] for v in verts) +
                    tuple(assign[("e", e)] for e in edges))
            return
        v = verts[i]
        for s in p.elements(sk.stars[v].source):
            added, ok = [], True
            if not flat:
                for e, j in links.get(v, ()):
                    val = p.restrict(j, s)
                    key = ("e", e)
                    if key in assign:
                        if assign[key] != val:
                            ok = False
                            break
                    else:
                        assign[key] = val
                        added.append(key)
            if ok:
                assign[v] = s
                rec(i + 1)
                del assign[v]
            for key in added:
                del assign[key]

    rec(0)
    return out


def segal_map(p: Presheaf, c: str, flat: bool = False) -> dict:
    cat = p.catalog
    sk = cat.skeleton(c)
    g = cat.graph(c)
    edges = [] if flat else list(sk.edges)
    return {s: tuple(p.restrict(sk.stars[v], s) for v in g.vertices) +
            tuple(p.restrict(sk.edges[e], s) for e in edges)
            for s in p.elements(c)}


@dataclass
class SegalReport:
    ok: bool
    failures: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def is_segal(p: Presheaf, flat: bool = False,
             objects: Iterable[str] | None = None) -> SegalReport:
    failures = {}
    for c in objects or p.catalog.objects:
        if flat and not p.catalog.graph(c).vertices:
            continue
        lim = segal_limit(p, c, flat)
        image = segal_map(p, c, flat)
        values = list(image.values())
        if len(set(values)) != len(values):
            failures[c] = "not injective"
        elif set(values) != lim:
            failures[c] = f"image has {len(set(values))} of {len(lim)} families"
    return SegalReport(not failures, failures)


# the gamma functor

BASE = None


def gamma(m: NewGraphMap) -> dict:
    """Pointed map from target vertices to source vertices (None is the base)."""
    out = {BASE: BASE}
    for w in m.target.vertices:
        out[w] = BASE
    for v in m.source.vertices:
        for w in m(star_class(m.source, v)).vertices:
            if out[w] is not BASE:
                raise GraphError("gamma: vertex images overlap")
            out[w] = v
    return out


def _pointed_compose(f: dict, g: dict) -> dict:
    """f after g."""
    return {k: f[v] for k, v in g.items()}


def is_active_pointed(f: dict) -> bool:
    return all(v is not BASE for k, v in f.items() if k is not BASE)


def is_inert_pointed(f: dict) -> bool:
    counts: dict = {}
    for k, v in f.items():
        if k is not BASE and v is not BASE:
            counts[v] = counts.get(v, 0) + 1
    return all(n == 1 for n in counts.values())


def gamma_report(cat: Catalog) -> dict:
    problems = {"functoriality": [], "factorization": [], "units": []}
    gam = {name: gamma(m.map) for name, m in cat.morphisms.items()}
    for (a, b), ms in cat.homs.items():
        for m in ms:
            if cat.is_active(m) and not is_active_pointed(gam[m.name]):
                problems["factorization"].append(f"{m.name} active")
            if cat.is_inert(m) and not is_inert_pointed(gam[m.name]):
                problems["factorization"].append(f"{m.name} inert")
            for n in cat.into(a):
                nm = cat.compose(m, n)
                if gam[nm.name] != _pointed_compose(gam[n.name], gam[m.name]):
                    problems["functoriality"].append(f"{m.name} after {n.name}")
    for u in cat.objects:
        if not is_star_graph(cat.graph(u)):
            continue
        ident = cat.identity(u)
        for c in cat.objects:
            for alpha in cat.hom(c, u):
                if not cat.is_active(alpha):
                    continue
                sections = [s for s in cat.hom(u, c) if cat.is_inert(s)
                            and cat.compose(alpha, s) is ident]
                if len(sections) != 1:
                    problems["units"].append(f"{alpha.name}: {len(sections)} sections")
    return problems


@dataclass
class SubstitutionSquare:
    star_to_piece: NewGraphMap     # active, star -> H
    star_to_host: NewGraphMap      # inert, star -> G
    host_to_result: NewGraphMap    # active, G -> G{H}
    piece_to_result: NewGraphMap   # inert, H -> G{H}


def substitution_square(host: Graph, v: str, alpha: NewGraphMap,
                        iota: NewGraphMap) -> SubstitutionSquare:
    """Substitute the target of the active map ``alpha`` (out of a star) at v.

    ``iota`` is an inert map from the same star onto the vertex v of host.
    """
    piece = alpha.target
    star = alpha.source
    (s,) = star.vertices
    beta = {}
    for i in star.nbhd[s]:
        beta[iota.arc_map[i]] = alpha.arc_map[star.inv[i]]
    assignment = {}
    for w in host.vertices:
        if w == v:
            assignment[w] = (piece, beta)
        else:
            rep, b = _piece_data(ClassicalMap(host, host, {a: a for a in host.arcs},
                                              {u: star_class(host, u) for u in host.vertices}), w)
            assignment[w] = (rep.source, b)
    sub = substitute(host, assignment, EXTENDED)
    act = from_classical(ClassicalMap(host, sub.graph, dict(sub.outer),
                                      {w: class_of(p) for w, p in sub.pieces.items()}))
    inert = from_embedding(sub.pieces[v])
    return SubstitutionSquare(alpha, iota, act, inert)


def is_pullback_square(sq: SubstitutionSquare) -> bool:
    """γ of the square is a pullback of pointed finite sets."""
    to_g = gamma(sq.host_to_result)
    to_h = gamma(sq.piece_to_result)
    g_to_s = gamma(sq.star_to_host)
    h_to_s = gamma(sq.star_to_piece)
    if _pointed_compose(g_to_s, to_g) != _pointed_compose(h_to_s, to_h):
        return False
    pullback = {(x, y) for x in g_to_s for y in h_to_s if g_to_s[x] == h_to_s[y]}
    pairs = [(to_g[k], to_h[k]) for k in to_g]
    return len(set(pairs)) == len(pairs) and set(pairs) == pullback


# the standard diagram of catalogs

def _properadic_filter(m, xs, xt) -> bool:
    return is_properadic(m, xs, xt)


def standard_catalogs(plain: Mapping[str, Graph], extended: Mapping[str, Graph],
                      tree_graphs: Mapping[str, Graph]) -> dict[str, Catalog]:
    """Finite pieces of every graph category in the functor diagram."""
    cats = {}
    cats["U"] = plain_catalog(plain)
    cats["Utilde"] = plain_catalog(extended, "Utilde")
    cats["U/o"] = oriented_catalog(cats["U"])
    cats["Utilde/o"] = oriented_catalog(cats["Utilde"])
    cats["U0"] = full_subcatalog(cats["U"], [a for a, g in plain.items()
                                             if a in tree_graphs and is_tree(g)])
    cats["U0/o"] = oriented_catalog(cats["U0"])
    cats["Ucyc"] = full_subcatalog(cats["U0"], [a for a in cats["U0"].objects
                                                if cats["U0"].graph(a).boundary])
    cats["G"] = oriented_catalog(
        cats["U"], keep=lambda a, dg: is_acyclic(dg), maps=_properadic_filter)
    cats["Gsc"] = oriented_catalog(cats["U0"], maps=_properadic_filter)
    omega, _ = dendroidal_catalog({a: cats["U0"].graph(a) for a in cats["Ucyc"].objects})
    omega.base = cats["Ucyc"]
    cats["Omega"] = omega
    return cats


def standard_functors(cats: Mapping[str, Catalog]) -> dict[str, CatalogFunctor]:
    """Every functor of the diagram except G -> U/o, keyed "source->target"."""
    def inc(a, b, oriented=False):
        f = oriented_inclusion if oriented else inclusion
        return f(cats[a], cats[b])

    out = {
        "Omega->Ucyc": forgetful(cats["Omega"], cats["Ucyc"]),
        "Gsc->U0/o": inc("Gsc", "U0/o", True),
        "U0/o->U0": forgetful(cats["U0/o"], cats["U0"]),
        "U/o->U": forgetful(cats["U/o"], cats["U"]),
        "Utilde/o->Utilde": forgetful(cats["Utilde/o"], cats["Utilde"]),
        "Omega->Gsc": inc("Omega", "Gsc", True),
        "Gsc->G": inc("Gsc", "G", True),
        "Ucyc->U0": inc("Ucyc", "U0"),
        "U0/o->U/o": inc("U0/o", "U/o", True),
        "U0->U": inc("U0", "U"),
        "U/o->Utilde/o": inc("U/o", "Utilde/o", True),
        "U->Utilde": inc("U", "Utilde"),
    }
    return out


REFLECTING = ("Omega->Ucyc", "U0/o->U0", "U/o->U", "Utilde/o->Utilde")
