from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphcat.core import (GraphError, cycle, edge_graph, line,
                           loop_with_one_vertex, nodeless_loop, star)
from graphcat.corpus import detour
from graphcat.directed import (DirectedGraph, Orientation, check_oriented_map,
                               class_inputs, class_outputs, detour_orientation,
                               directed_nodeless_loop, edge_map, four_sets,
                               from_four_sets, graph_inputs, graph_outputs,
                               is_acyclic, is_convex, is_dendroidal, is_dioperadic,
                               is_injective_class, is_linear, is_properadic,
                               is_structured, linear_orientation,
                               orientation_diagnostics, orientations_of,
                               oriented_maps, p_map_diagnostics,
                               properadic_restriction, restrict_orientation,
                               rooted_orientation, structured_subgraphs,
                               structured_union)
from graphcat.embeddings import (EmbClass, EtaleMap, all_unions,
                                 edge_class, enumerate_embeddings, identity_class,
                                 representative, star_class)
from graphcat.maps import enumerate_maps, from_embedding, is_active
from graphcat.oracle import convex_by_lifting

from .strategies import graphs


def oriented_corpus(corpus, acyclic=None):
    out = []
    for name, g in corpus.items():
        for x in orientations_of(g):
            dg = DirectedGraph(g, x)
            if acyclic is None or (not g.is_nodeless_loop() and is_acyclic(dg) == acyclic):
                out.append((name, dg))
    return out


def test_orientation_counts(extended):
    for g in extended.values():
        xs = orientations_of(g)
        assert len(xs) == 2 ** len(g.edges) == len(set(xs))
        assert all(orientation_diagnostics(g, x) == [] for x in xs)


def test_bad_orientation():
    g = edge_graph()
    with pytest.raises(GraphError):
        DirectedGraph(g, Orientation({"♭": 1, "♯": 1}))
    assert orientation_diagnostics(g, Orientation({"♭": 1})) != []


def test_restriction_along_maps(plain):
    s, t = plain["star2"], plain["line2"]
    for m in enumerate_maps(s, t):
        for x in orientations_of(t):
            y = restrict_orientation(m, x)
            assert orientation_diagnostics(s, y) == []
            assert check_oriented_map(m, y, x) == []


def test_sign_mismatch_rejected(plain):
    g = plain["line2"]
    x = linear_orientation(2).orientation
    assert check_oriented_map(from_embedding(representative(g, identity_class(g))),
                              x.negate(), x) != []


def test_linear_and_dendroidal():
    for n in range(4):
        dg = linear_orientation(n)
        assert is_linear(dg) and is_dendroidal(dg) and is_acyclic(dg)
        assert len(graph_inputs(dg)) == len(graph_outputs(dg)) == 1
    assert not is_linear(directed_nodeless_loop())
    assert not is_acyclic(directed_nodeless_loop())


def test_rooted_trees_are_dendroidal(tree_corpus):
    for t in tree_corpus.values():
        for r in t.boundary:
            dg = DirectedGraph(t, rooted_orientation(t, r))
            assert is_dendroidal(dg) and is_acyclic(dg)
            assert graph_outputs(dg) == {r}


def test_dendroidal_orientations_of_star(plain):
    # a star with n >= 1 legs has exactly n dendroidal orientations
    for n in range(1, 5):
        g = star(n)
        assert sum(is_dendroidal(DirectedGraph(g, x)) for x in orientations_of(g)) == n


def test_root_must_be_boundary():
    with pytest.raises(GraphError):
        rooted_orientation(line(2), "e1-")


def test_cycles_detected():
    g = cycle(3)
    counts = [is_acyclic(DirectedGraph(g, x)) for x in orientations_of(g)]
    # the two cyclic orientations of a triangle are the only cyclic ones
    assert counts.count(False) == 2
    g = loop_with_one_vertex()
    assert sum(is_acyclic(DirectedGraph(g, x)) for x in orientations_of(g)) == 0


def test_four_sets_round_trip(extended):
    for _, dg in oriented_corpus(extended):
        back = from_four_sets(four_sets(dg))
        assert back.graph == dg.graph
        assert back.orientation == dg.orientation


def test_four_sets_nodeless():
    sets = four_sets(directed_nodeless_loop())
    assert sets["V"] == [] and sets["in"] == [] and sets["out"] == []
    assert sets["L"] == ["o"]


def test_stars_edges_and_whole_are_structured(plain):
    for _, dg in oriented_corpus(plain, acyclic=True):
        g = dg.graph
        sub = set(structured_subgraphs(dg))
        assert identity_class(g) in sub
        assert all(star_class(g, v) in sub for v in g.vertices)
        assert all(edge_class(g, min(e)) in sub for e in g.edges)


def test_detour_not_structured():
    dg = DirectedGraph(detour(), detour_orientation())
    c = EmbClass({"u", "w"}, {"i†", "x0", "x1"})
    assert c in enumerate_embeddings(dg.graph)
    assert is_injective_class(dg.graph, c)
    assert not is_convex(dg, c) and not is_structured(dg, c)
    assert not convex_by_lifting(dg.graph, dg.orientation, c)
    m = from_embedding(representative(dg.graph, c))
    xs = restrict_orientation(m, dg.orientation)
    assert not is_properadic(m, xs, dg.orientation)
    with pytest.raises(GraphError):
        properadic_restriction(m, xs, dg.orientation)


def test_convexity_matches_lifting(plain):
    n = 0
    for _, dg in oriented_corpus(plain, acyclic=True):
        for c in enumerate_embeddings(dg.graph):
            if is_injective_class(dg.graph, c):
                assert is_convex(dg, c) == convex_by_lifting(dg.graph, dg.orientation, c)
                n += 1
    assert n > 100


@given(graphs(), st.data())
def test_convexity_matches_lifting_random(g, data):
    x = data.draw(st.sampled_from(orientations_of(g)))
    dg = DirectedGraph(g, x)
    if not is_acyclic(dg):
        return
    for c in enumerate_embeddings(g):
        if is_injective_class(g, c):
            assert is_convex(dg, c) == convex_by_lifting(g, x, c)


def test_structured_union_is_the_only_structured_union(plain):
    for _, dg in oriented_corpus(plain, acyclic=True):
        g = dg.graph
        sub = structured_subgraphs(dg)
        for h, k in itertools.combinations_with_replacement(sub, 2):
            unions = all_unions(h, k, g)
            if not unions:
                continue
            hit = {u for u in unions if is_structured(dg, u)}
            u = structured_union(dg, h, k)
            assert hit == ({u} if u is not None else set())


def test_repeated_edges_lie_between_input_and_output(plain):
    for _, dg in oriented_corpus(plain):
        g, x = dg.graph, dg.orientation
        for c in enumerate_embeddings(g):
            f = representative(g, c)
            y = restrict_orientation(from_embedding(f), x)
            k = DirectedGraph(f.source, y)
            ins = {f.source.edge(a) for a in graph_inputs(k)}
            outs = {f.source.edge(a) for a in graph_outputs(k)}
            for e, e2 in itertools.combinations(f.source.edges, 2):
                if g.edge(f.arc_map[min(e)]) == g.edge(f.arc_map[min(e2)]):
                    assert g.is_internal(g.edge(f.arc_map[min(e)]))
                    assert (e in ins and e2 in outs) or (e in outs and e2 in ins)
            if {f.arc_map[a] for a in graph_inputs(k)} <= graph_inputs(dg):
                assert is_injective_class(g, c)


def test_properadic_means_structured_image(plain):
    acyc = oriented_corpus({k: plain[k] for k in ("star2", "line2", "bigon", "detour")},
                           acyclic=True)
    for (_, a), (_, b) in itertools.product(acyc, repeat=2):
        for m in oriented_maps(a, b):
            img = m(identity_class(a.graph))
            expect = (is_injective_class(b.graph, img)
                      and convex_by_lifting(b.graph, b.orientation, img))
            assert is_properadic(m, a.orientation, b.orientation) == expect
            if is_active(m):
                assert is_properadic(m, a.orientation, b.orientation)


def test_properadic_maps_determined_by_edges(plain):
    acyc = oriented_corpus({k: plain[k] for k in ("star2", "star3", "line2", "bigon", "no_joins")},
                           acyclic=True)
    for (_, a), (_, b) in itertools.product(acyc, repeat=2):
        ms = [m for m in oriented_maps(a, b) if is_properadic(m, a.orientation, b.orientation)]
        keys = [tuple(sorted((tuple(sorted(e)), tuple(sorted(f))) for e, f in edge_map(m).items()))
                for m in ms]
        assert len(keys) == len(set(keys))
        for m in ms:
            table = properadic_restriction(m, a.orientation, b.orientation)
            assert set(table) == set(structured_subgraphs(a))


def test_properadic_needs_acyclic():
    g = loop_with_one_vertex()
    x = orientations_of(g)[0]
    m = from_embedding(representative(g, identity_class(g)))
    with pytest.raises(GraphError):
        is_properadic(m, x, x)


def test_dioperadic(tree_corpus):
    t = tree_corpus["line2"]
    x = linear_orientation(2).orientation
    for m in enumerate_maps(tree_corpus["star2"], t):
        y = restrict_orientation(m, x)
        assert is_dioperadic(m, y, x)
    with pytest.raises(GraphError):
        is_dioperadic(from_embedding(representative(cycle(2), identity_class(cycle(2)))),
                      orientations_of(cycle(2))[0], orientations_of(cycle(2))[0])


def test_class_inputs_outputs():
    dg = linear_orientation(2)
    c = identity_class(dg.graph)
    assert class_inputs(dg.orientation, c) == graph_inputs(dg)
    assert class_outputs(dg.orientation, c) == graph_outputs(dg)


def test_p_maps():
    g = cycle(2)
    h = loop_with_one_vertex()
    am = {"e0-": "1", "e0+": "2", "e1-": "1", "e1+": "2"}
    f = EtaleMap(g, h, am, {"v0": "v", "v1": "v"})
    xh = Orientation({"1": 1, "2": -1})
    xg = Orientation({a: xh[b] for a, b in am.items()})
    assert p_map_diagnostics(f, xg, xh) == []
    assert p_map_diagnostics(f, xg.negate(), xh) != []


# maps into and out of the directed nodeless loop

def extended_oriented(dg, other):
    return oriented_maps(dg, other, "Utilde")


def test_directed_nodeless_automorphisms():
    k = directed_nodeless_loop()
    assert len(extended_oriented(k, k)) == 1
    other = DirectedGraph(nodeless_loop(), k.orientation.negate())
    assert len(extended_oriented(k, other)) == 1


def test_maps_to_directed_nodeless(plain):
    k = directed_nodeless_loop()
    for _, dg in oriented_corpus(plain):
        g, x = dg.graph, dg.orientation
        n = len(extended_oriented(dg, k))
        # vacuous for the edge, which has no vertices
        one_in_one_out = all(
            sum(x[d] < 0 for d in g.nbhd[v]) == 1 == sum(x[d] > 0 for d in g.nbhd[v])
            for v in g.vertices)
        is_star0 = bool(g.vertices) and not g.arcs
        assert n == (1 if one_in_one_out or is_star0 else 0), (g, x)


def test_no_maps_out_of_directed_nodeless(plain):
    k = directed_nodeless_loop()
    for _, dg in oriented_corpus(plain):
        assert extended_oriented(k, dg) == []
