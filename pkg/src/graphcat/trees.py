"""Subtrees and the tree-map characterization.

Embeddings into a tree are injective on arcs, so an element of Emb(T) is the
same thing as a connected sub-triple (arcs, darts, vertices) of T.  On such
triples union and intersection are plain set operations, defined whenever
the two triples overlap.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .core import Graph, GraphError, is_tree
from .embeddings import EmbClass, enumerate_embeddings, representative
from .maps import NewGraphMap


@dataclass(frozen=True, order=True)
class Subtree:
    arcs: frozenset
    darts: frozenset
    vertices: frozenset

    def __repr__(self):
        return (f"Subtree(V={sorted(self.vertices)}, D={sorted(self.darts)}, "
                f"A={sorted(self.arcs)})")


def _require_tree(t: Graph):
    if not is_tree(t):
        raise GraphError("expected a tree")


def subtree_of(t: Graph, c: EmbClass) -> Subtree:
    rep = representative(t, c)
    return Subtree(frozenset(rep.arc_map.values()),
                   frozenset(rep.arc_map[d] for d in rep.source.darts),
                   frozenset(c.vertices))


def class_of_subtree(s: Subtree) -> EmbClass:
    return EmbClass(s.vertices, s.arcs - s.darts)


def subtrees(t: Graph) -> tuple[Subtree, ...]:
    _require_tree(t)
    return tuple(sorted(subtree_of(t, c) for c in enumerate_embeddings(t)))


def overlap(r: Subtree, s: Subtree) -> bool:
    return bool(r.arcs & s.arcs or r.darts & s.darts or r.vertices & s.vertices)


def tree_union(r: Subtree, s: Subtree) -> Subtree | None:
    if not overlap(r, s):
        return None
    return Subtree(r.arcs | s.arcs, r.darts | s.darts, r.vertices | s.vertices)


def tree_intersection(r: Subtree, s: Subtree) -> Subtree | None:
    if not overlap(r, s):
        return None
    return Subtree(r.arcs & s.arcs, r.darts & s.darts, r.vertices & s.vertices)


def _image(m: NewGraphMap, s: Subtree) -> Subtree:
    return subtree_of(m.target, m(class_of_subtree(s)))


def check_axiom_iv(m: NewGraphMap) -> list[str]:
    for c in enumerate_embeddings(m.source):
        image = [m.arc_map[a] for a in c.boundary]
        if len(set(image)) != len(image) or set(image) != m(c).boundary:
            return [f"(iv): boundary of {c!r} not carried bijectively"]
    return []


def check_tree_map(m: NewGraphMap, intersections: bool = True) -> list[str]:
    """Condition (iv) plus preservation of overlaps, unions and intersections.

    With ``intersections=False`` only the union half of (v) is checked.
    """
    _require_tree(m.source)
    _require_tree(m.target)
    diag = check_axiom_iv(m)
    if diag:
        return diag
    subs = subtrees(m.source)
    img = {s: _image(m, s) for s in subs}
    for r, s in combinations(subs, 2):
        if not overlap(r, s):
            continue
        if not overlap(img[r], img[s]):
            return [f"(v): overlap of {r!r} and {s!r} not preserved"]
        if img[tree_union(r, s)] != tree_union(img[r], img[s]):
            return [f"(v): union of {r!r} and {s!r} not preserved"]
        if intersections and img[tree_intersection(r, s)] != tree_intersection(img[r], img[s]):
            return [f"(v): intersection of {r!r} and {s!r} not preserved"]
    return []


def forced_candidates(t: Graph, u: Graph):
    """Every (arc map, table) on trees obeying (iv).

    Boundaries separate the elements of Emb(u), so each arc map forces at
    most one table.
    """
    _require_tree(t)
    _require_tree(u)
    by_boundary = {c.boundary: c for c in enumerate_embeddings(u)}
    emb = enumerate_embeddings(t)
    reps = sorted(min(e) for e in t.edges)
    for images in product(u.arcs, repeat=len(reps)):
        am = {}
        for a, b in zip(reps, images):
            am[a], am[t.inv[a]] = b, u.inv[b]
        table = {}
        for c in emb:
            bd = [am[a] for a in c.boundary]
            d = by_boundary.get(frozenset(bd))
            if d is None or len(set(bd)) != len(bd):
                break
            table[c] = d
        else:
            yield NewGraphMap(t, u, am, table)
