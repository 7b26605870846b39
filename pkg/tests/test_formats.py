from __future__ import annotations

import pytest
from hypothesis import given

from graphcat.core import edge_graph, nodeless_loop, star
from graphcat.corpus import detour
from graphcat.directed import detour_orientation, orientations_of
from graphcat.dot import to_dot
from graphcat.embeddings import enumerate_embeddings, representative
from graphcat.formats import (FormatError, emit_catalog, emit_class, emit_graph,
                              emit_map, emit_presheaf, emit_substitution, parse_catalog,
                              parse_class, parse_graph, parse_map, parse_presheaf,
                              parse_substitution)
from graphcat.maps import enumerate_maps, substitute, to_classical
from graphcat.segal import Coloring, OrientationPresheaf, plain_catalog

from .strategies import graphs


def test_graph_round_trip(extended):
    for g in extended.values():
        back, x = parse_graph(emit_graph(g))
        assert back == g and x is None


def test_oriented_graph_round_trip():
    g, x = detour(), detour_orientation()
    back, y = parse_graph(emit_graph(g, x))
    assert back == g and y == x


@given(graphs())
def test_graph_round_trip_random(g):
    assert parse_graph(emit_graph(g))[0] == g
    # a graph without arcs has no sign lines, so its orientation is not recorded
    for x in orientations_of(g)[:2] if g.arcs else ():
        assert parse_graph(emit_graph(g, x)) == (g, x)


def test_class_round_trip(extended):
    for g in extended.values():
        for c in enumerate_embeddings(g):
            assert parse_class(emit_class(c)) == c


def test_map_round_trips(plain):
    s, t = plain["star2"], plain["bigon"]
    for m in enumerate_maps(s, t):
        assert parse_map(emit_map(m))[0] == m
        c = to_classical(m)
        assert parse_map(emit_map(c))[0] == c
    f = representative(t, enumerate_embeddings(t)[-1])
    back = parse_map(emit_map(f))[0]
    assert (back.source, back.target, back.arc_map, back.vertex_map) == \
        (f.source, f.target, f.arc_map, f.vertex_map)
    x = orientations_of(t)[1]
    m = enumerate_maps(s, t)[0]
    _, xs, xt = parse_map(emit_map(m, None, x))
    assert xs is None and xt == x


def test_substitution_round_trip():
    host = star(2)
    assignment = {"v": (star(2, "w"), {"1": "1†", "2": "2†"})}
    h, a, mode = parse_substitution(emit_substitution(host, assignment))
    assert h == host and a == assignment and mode == "plain"
    assert substitute(h, a).graph.vertices


def test_catalog_and_presheaf_round_trip(plain):
    cat = plain_catalog({k: plain[k] for k in ("edge", "star1", "star2", "line2")})
    back = parse_catalog(emit_catalog(cat))
    assert set(back.objects) == set(cat.objects)
    assert set(back.morphisms) == set(cat.morphisms)
    for name, m in cat.morphisms.items():
        assert back.morphisms[name].map == m.map
    for p in (Coloring(cat, 2, 2), OrientationPresheaf(cat)):
        q = parse_presheaf(emit_presheaf(p), back)
        assert emit_presheaf(q) == emit_presheaf(p)


@pytest.mark.parametrize("text, line", [
    ("graphcat graph 1\nedge a a\n", 2),
    ("graphcat graph 1\nedge a b\nedge b c\n", 3),
    ("graphcat graph 1\n# comment\n\nvertex v a\nvertex v b\n", 5),
    ("graphcat graph 2\n", 1),
    ("graphcat map 1\nkind new\n@source\nedge a b\n@target\nedge a b\n"
     "@arcs\na > b c\n@classes\n", 8),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as err:
        if "map" in text.split("\n")[0]:
            parse_map(text)
        else:
            parse_graph(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_wrong_header():
    with pytest.raises(FormatError):
        parse_graph("graphcat map 1\n")
    with pytest.raises(FormatError):
        parse_graph("")


def test_presheaf_must_be_total(plain):
    cat = plain_catalog({"edge": plain["edge"]})
    text = emit_presheaf(Coloring(cat, 2, 1))
    lines = text.splitlines()
    lines.remove("1| => 1|")
    broken = "\n".join(lines)
    with pytest.raises(FormatError):
        parse_presheaf(broken, cat)


def test_unwritable_names():
    from graphcat.core import Graph
    g = Graph(["a|b", "c"], {"a|b": "c", "c": "a|b"})
    with pytest.raises(FormatError):
        emit_graph(g)


def test_dot_output():
    d = to_dot(edge_graph())
    assert d.startswith('graph "G" {') and "--" in d
    d = to_dot(detour(), detour_orientation())
    assert d.startswith('digraph "G" {') and "->" in d
    assert '"u" -> "w"' in d
    loop = to_dot(nodeless_loop())
    assert loop.count("--") == 1
