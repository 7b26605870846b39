"""Graphs with loose ends in the involutive-arc encoding.

A graph is a set of arcs with a fixpoint-free involution, a subset of darts
attached to vertices, and a boundary.  For ordinary ("plain") graphs the
boundary is everything that is not a dart; the extended variant stores it
explicitly, which is what makes the nodeless loop expressible.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from itertools import permutations, product
from types import MappingProxyType

PLAIN = "plain"
EXTENDED = "extended"
MODES = (PLAIN, EXTENDED)

DAGGER = "†"


class GraphError(ValueError):
    pass


class Graph:
    """Immutable graph.

    ``nbhd`` maps each vertex to the darts attached to it; the dart set and
    the attaching map are derived from it.  When ``boundary`` is omitted the
    plain rule ``arcs - darts`` applies.
    """

    __slots__ = ("arcs", "inv", "vertices", "nbhd", "darts", "attach",
                 "boundary", "_key", "_hash")

    def __init__(self, arcs: Iterable[str], involution: Mapping[str, str],
                 nbhd: Mapping[str, Iterable[str]] | None = None,
                 vertices: Iterable[str] | None = None,
                 boundary: Iterable[str] | None = None):
        nbhd = dict(nbhd or {})
        verts = set(nbhd) if vertices is None else set(vertices)
        missing = set(nbhd) - verts
        if missing:
            raise GraphError(f"nbhd lists unknown vertices {sorted(missing)}")
        self.arcs = tuple(sorted(set(arcs)))
        self.inv = MappingProxyType(dict(involution))
        self.vertices = tuple(sorted(verts))
        self.nbhd = MappingProxyType(
            {v: tuple(sorted(nbhd.get(v, ()))) for v in self.vertices})
        attach = {}
        for v, ds in self.nbhd.items():
            for d in ds:
                if d in attach:
                    raise GraphError(f"dart {d} attached twice")
                attach[d] = v
        self.attach = MappingProxyType(attach)
        self.darts = frozenset(attach)
        if boundary is None:
            boundary = set(self.arcs) - self.darts
        self.boundary = frozenset(boundary)
        self._key = (self.arcs, tuple(sorted(self.inv.items())),
                     tuple(self.nbhd.items()), tuple(sorted(self.boundary)))
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"Graph(arcs={list(self.arcs)}, V={list(self.vertices)}, "
                f"boundary={sorted(self.boundary)})")

    def __getstate__(self):
        return (self.arcs, dict(self.inv), {v: list(d) for v, d in self.nbhd.items()},
                self.vertices, sorted(self.boundary))

    def __setstate__(self, state):
        arcs, inv, nbhd, verts, bd = state
        self.__init__(arcs, inv, nbhd, verts, bd)

    # derived data

    def edge(self, a: str) -> frozenset:
        return frozenset((a, self.inv[a]))

    @property
    def edges(self) -> tuple[frozenset, ...]:
        return tuple(sorted({self.edge(a) for a in self.arcs}, key=sorted))

    def is_internal(self, e: frozenset) -> bool:
        return not (e & self.boundary)

    @property
    def internal_edges(self) -> tuple[frozenset, ...]:
        return tuple(e for e in self.edges if self.is_internal(e))

    def valence(self, v: str) -> int:
        return len(self.nbhd[v])

    def is_plain(self) -> bool:
        return self.boundary == set(self.arcs) - self.darts

    def is_edge_graph(self) -> bool:
        return not self.vertices and len(self.arcs) == 2 and len(self.boundary) == 2

    def is_nodeless_loop(self) -> bool:
        return not self.vertices and len(self.arcs) == 2 and not self.boundary

    def relabel(self, arcs: Mapping[str, str], vertices: Mapping[str, str]) -> Graph:
        return Graph([arcs[a] for a in self.arcs],
                     {arcs[a]: arcs[b] for a, b in self.inv.items()},
                     {vertices[v]: [arcs[d] for d in ds] for v, ds in self.nbhd.items()},
                     [vertices[v] for v in self.vertices],
                     [arcs[a] for a in self.boundary])


def validate(g: Graph, mode: str = PLAIN) -> list[str]:
    """Return diagnostics; an empty list means the graph is valid in ``mode``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    arcs = set(g.arcs)
    if set(g.inv) != arcs:
        return ["involution: not defined on exactly the arcs"]
    for a, b in g.inv.items():
        if b not in arcs:
            return [f"involution: {a} sent outside the arcs"]
        if a == b:
            return [f"involution: fixpoint {a}"]
        if g.inv[b] != a:
            return [f"involution: not self-inverse at {a}"]
    if not g.darts <= arcs:
        return [f"darts: {sorted(g.darts - arcs)} are not arcs"]
    if not g.boundary <= arcs:
        return ["boundary: not a subset of the arcs"]
    if mode == PLAIN:
        if not g.is_plain():
            return ["boundary: plain graphs need boundary = arcs - darts"]
        return []
    dagger_darts = {g.inv[d] for d in g.darts}
    if not (dagger_darts - g.darts) <= g.boundary:
        return ["boundary: must contain every non-dart involute of a dart"]
    if g.boundary & g.darts:
        return ["boundary: must avoid darts"]
    rest = g.boundary - dagger_darts
    if any(g.inv[a] not in rest for a in rest):
        return ["boundary: the part away from darts must be involution-closed"]
    return []


def is_valid(g: Graph, mode: str = PLAIN) -> bool:
    return not validate(g, mode)


# standard graphs

def edge_graph() -> Graph:
    return Graph(["♯", "♭"], {"♯": "♭", "♭": "♯"})


def star(n: int, vertex: str = "v") -> Graph:
    if n < 0:
        raise ValueError("star arity must be non-negative")
    arcs, inv = [], {}
    for i in range(1, n + 1):
        a, b = str(i), f"{i}{DAGGER}"
        arcs += [a, b]
        inv[a], inv[b] = b, a
    return Graph(arcs, inv, {vertex: [str(i) for i in range(1, n + 1)]})


def nodeless_loop() -> Graph:
    return Graph(["o", f"o{DAGGER}"], {"o": f"o{DAGGER}", f"o{DAGGER}": "o"},
                 boundary=())


def loop_with_one_vertex() -> Graph:
    return Graph(["1", "2"], {"1": "2", "2": "1"}, {"v": ["1", "2"]})


def line(n: int) -> Graph:
    """``n`` vertices in a row with a loose end at each extremity.

    ``line(0)`` is the edge and ``line(1)`` the two-star.
    """
    if n < 0:
        raise ValueError("line length must be non-negative")
    if n == 0:
        return edge_graph()
    arcs, inv, nbhd = [], {}, {}
    # edge i runs from vertex i-1 to vertex i; arcs "ei-" sit at the lower end
    for i in range(n + 1):
        lo, hi = f"e{i}-", f"e{i}+"
        arcs += [lo, hi]
        inv[lo], inv[hi] = hi, lo
    for j in range(n):
        nbhd[f"v{j}"] = [f"e{j}+", f"e{j + 1}-"]
    return Graph(arcs, inv, nbhd)


def cycle(n: int) -> Graph:
    """``n`` two-valent vertices arranged in a circle (``n`` >= 1)."""
    if n < 1:
        raise ValueError("cycle length must be positive")
    if n == 1:
        return loop_with_one_vertex()
    arcs, inv, nbhd = [], {}, {}
    for i in range(n):
        lo, hi = f"e{i}-", f"e{i}+"
        arcs += [lo, hi]
        inv[lo], inv[hi] = hi, lo
    for j in range(n):
        nbhd[f"v{j}"] = [f"e{j}+", f"e{(j + 1) % n}-"]
    return Graph(arcs, inv, nbhd)


def standard_graph(kind: str, n: int | None = None) -> Graph:
    makers = {"edge": edge_graph, "nodeless_loop": nodeless_loop,
              "loop_with_one_vertex": loop_with_one_vertex}
    if kind in makers:
        return makers[kind]()
    if kind in ("star", "line", "cycle"):
        if n is None:
            raise ValueError(f"{kind} needs a size")
        return {"star": star, "line": line, "cycle": cycle}[kind](n)
    raise ValueError(f"unknown graph kind {kind!r}")


def from_edge_list(legs: Mapping[str, int], links: Iterable[tuple[str, str]],
                   vertices: Iterable[str] = ()) -> Graph:
    """Build a plain graph from loose-end counts and vertex-to-vertex edges.

    Arcs are named ``<vertex>.<k>`` for darts and ``<vertex>.<k>†`` for the
    free end of a leg.
    """
    arcs, inv, nbhd = [], {}, {v: [] for v in vertices}
    count: dict[str, int] = {}

    def fresh(v):
        count[v] = count.get(v, 0) + 1
        d = f"{v}.{count[v]}"
        nbhd.setdefault(v, []).append(d)
        arcs.append(d)
        return d

    for v, k in legs.items():
        for _ in range(k):
            d = fresh(v)
            b = d + DAGGER
            arcs.append(b)
            inv[d], inv[b] = b, d
    for v, w in links:
        d, e = fresh(v), fresh(w)
        inv[d], inv[e] = e, d
    return Graph(arcs, inv, nbhd)


# connectivity and trees

def _incidence_components(g: Graph):
    """Union-find over V ⊔ E with one link per dart."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in g.vertices:
        parent[("v", v)] = ("v", v)
    for e in g.edges:
        parent[("e", e)] = ("e", e)
    cyclic = False
    for d, v in sorted(g.attach.items()):
        a, b = find(("v", v)), find(("e", g.edge(d)))
        if a == b:
            cyclic = True
        else:
            parent[a] = b
    roots = {find(x) for x in parent}
    return roots, cyclic


def is_connected(g: Graph) -> bool:
    if not g.vertices and not g.arcs:
        return False
    roots, _ = _incidence_components(g)
    return len(roots) == 1


def has_cycle(g: Graph) -> bool:
    # A path v e v through a loop, or any longer closed walk, shows up as a
    # dart link joining two already-connected nodes of the incidence graph.
    _, cyclic = _incidence_components(g)
    return cyclic


def is_tree(g: Graph) -> bool:
    if not is_connected(g):
        raise GraphError("is_tree expects a connected graph")
    # the nodeless loop has no path of length > 1 but is not simply connected
    if g.is_nodeless_loop():
        return False
    return not has_cycle(g)


# canonical forms

def _labelings(g: Graph):
    by_valence: dict[int, list[str]] = {}
    for v in g.vertices:
        by_valence.setdefault(g.valence(v), []).append(v)
    groups = [by_valence[k] for k in sorted(by_valence)]
    for orders in product(*(permutations(grp) for grp in groups)):
        vorder = [v for grp in orders for v in grp]
        for dorders in product(*(permutations(g.nbhd[v]) for v in vorder)):
            yield vorder, [d for ds in dorders for d in ds]


def canonical_form(g: Graph) -> tuple[Graph, dict[str, str], dict[str, str]]:
    """Relabel ``g`` to a representative that depends only on its iso class.

    Returns the relabeled graph together with the arc and vertex renamings.
    The search ranges over vertex orders (within valence classes) and dart
    orders at each vertex; non-dart arcs follow their involutes.
    """
    best = None
    rest = [a for a in g.arcs if a not in g.darts]
    for vorder, dorder in _labelings(g):
        label = {d: i for i, d in enumerate(dorder)}
        tail = sorted((a for a in rest if g.inv[a] in label),
                      key=lambda a: label[g.inv[a]])
        free = sorted(a for a in rest if g.inv[a] not in label)
        # free arcs come in involutive pairs with no darts nearby
        pairs = sorted({tuple(sorted((a, g.inv[a]))) for a in free})
        choices = [[p, p[::-1]] for p in pairs]
        for flips in product(*choices):
            order = dorder + tail + [a for p in flips for a in p]
            lab = {a: i for i, a in enumerate(order)}
            vlab = {v: i for i, v in enumerate(vorder)}
            code = (tuple(lab[g.inv[a]] for a in order),
                    tuple(len(g.nbhd[v]) for v in vorder),
                    tuple(sorted(lab[a] for a in g.boundary)))
            if best is None or code < best[0]:
                best = (code, lab, vlab)
    _, lab, vlab = best
    arcs = {a: f"a{i}" for a, i in lab.items()}
    verts = {v: f"v{i}" for v, i in vlab.items()}
    return g.relabel(arcs, verts), arcs, verts


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_form(g)[0] == canonical_form(h)[0]
