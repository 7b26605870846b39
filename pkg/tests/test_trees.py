from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcat.core import GraphError, line, loop_with_one_vertex
from graphcat.embeddings import enumerate_embeddings, is_member, representative
from graphcat.maps import NewGraphMap, check_new_map, enumerate_maps
from graphcat.trees import (Subtree, check_axiom_iv, check_tree_map,
                            class_of_subtree, forced_candidates, overlap, subtree_of,
                            subtrees, tree_intersection, tree_union)


def all_candidates(tree_corpus):
    for s, t in itertools.product(tree_corpus.values(), repeat=2):
        yield from forced_candidates(s, t)


@pytest.fixture(scope="module")
def candidates(tree_corpus):
    return list(all_candidates(tree_corpus))


def test_embeddings_into_trees_are_injective_on_arcs(tree_corpus):
    for t in tree_corpus.values():
        for c in enumerate_embeddings(t):
            rep = representative(t, c)
            assert len(set(rep.arc_map.values())) == len(rep.arc_map)


def test_boundary_determines_class_in_trees(tree_corpus):
    for t in tree_corpus.values():
        bds = [c.boundary for c in enumerate_embeddings(t)]
        assert len(bds) == len(set(bds))


def test_boundary_does_not_determine_class_off_trees():
    g = loop_with_one_vertex()
    bds = [c.boundary for c in enumerate_embeddings(g)]
    assert len(bds) != len(set(bds))


def test_subtrees_biject_with_emb(tree_corpus):
    for t in tree_corpus.values():
        subs = subtrees(t)
        assert len(subs) == len(set(subs)) == len(enumerate_embeddings(t))
        for c in enumerate_embeddings(t):
            assert class_of_subtree(subtree_of(t, c)) == c


def test_subtrees_need_tree():
    with pytest.raises(GraphError):
        subtrees(loop_with_one_vertex())


def test_line2_overlaps():
    t = line(2)
    subs = {class_of_subtree(s): s for s in subtrees(t)}
    by_vertices = {}
    for c, s in subs.items():
        by_vertices.setdefault(c.vertices, []).append(s)
    (a,), (b,) = by_vertices[frozenset({"v0"})], by_vertices[frozenset({"v1"})]
    assert overlap(a, b)
    u = tree_union(a, b)
    assert class_of_subtree(u).vertices == {"v0", "v1"}
    assert is_member(class_of_subtree(u), t)
    i = tree_intersection(a, b)
    assert not i.vertices and len(i.arcs) == 2
    e0 = next(s for s in by_vertices[frozenset()] if "e0-" in s.arcs)
    assert not overlap(e0, b)
    assert tree_union(e0, b) is None and tree_intersection(e0, b) is None


def test_overlap_iff_union_is_subtree(tree_corpus):
    for t in tree_corpus.values():
        subs = subtrees(t)
        for r, s in itertools.combinations(subs, 2):
            joined = Subtree(r.arcs | s.arcs, r.darts | s.darts, r.vertices | s.vertices)
            assert overlap(r, s) == (joined in subs)


def test_tree_characterization(candidates):
    assert candidates
    for m in candidates:
        assert (check_new_map(m) == []) == (check_tree_map(m) == [])


def test_forced_candidates_cover_enumerated_maps(tree_corpus):
    for s, t in itertools.product(tree_corpus.values(), repeat=2):
        valid = {m for m in forced_candidates(s, t) if not check_new_map(m)}
        assert valid == set(enumerate_maps(s, t))


def test_union_half_suffices(candidates):
    union_only = [m for m in candidates if check_tree_map(m, intersections=False) == []]
    assert union_only
    for m in union_only:
        assert check_new_map(m) == []


@settings(max_examples=80)
@given(st.data())
def test_characterization_on_perturbed_tables(tree_corpus, data):
    s = data.draw(st.sampled_from(sorted(tree_corpus)))
    t = data.draw(st.sampled_from(sorted(tree_corpus)))
    ms = enumerate_maps(tree_corpus[s], tree_corpus[t])
    if not ms:
        return
    m = data.draw(st.sampled_from(ms))
    table = dict(m.emb_map)
    emb_s, emb_t = enumerate_embeddings(m.source), enumerate_embeddings(m.target)
    for c in data.draw(st.lists(st.sampled_from(emb_s), max_size=2)):
        table[c] = data.draw(st.sampled_from(emb_t))
    bent = NewGraphMap(m.source, m.target, m.arc_map, table)
    assert (check_new_map(bent) == []) == (check_tree_map(bent) == [])
    assert (check_new_map(bent) == []) == (check_tree_map(bent, intersections=False) == [])


def test_axiom_iv_diagnostic(tree_corpus):
    t = tree_corpus["line2"]
    m = enumerate_maps(tree_corpus["star2"], t)[0]
    swapped = {c: max(enumerate_embeddings(t), key=lambda d: len(d.vertices))
               for c in m.emb_map}
    bad = NewGraphMap(m.source, t, m.arc_map, swapped)
    assert check_axiom_iv(bad) != []
    assert check_tree_map(bad) == check_axiom_iv(bad)
