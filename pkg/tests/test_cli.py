from __future__ import annotations

import json

import pytest

from graphcat.cli import run
from graphcat.core import line, star
from graphcat.corpus import detour
from graphcat.directed import detour_orientation, restrict_orientation
from graphcat.embeddings import EmbClass, edge_class, representative
from graphcat.formats import emit_graph, emit_map, emit_substitution, parse_map
from graphcat.maps import enumerate_maps, from_embedding


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out


def test_validate_and_emb(write, capsys):
    path = write("s5.txt", emit_graph(star(5)))
    assert call(capsys, "validate", "--graph", path) == (0, {"valid": True, "diagnostics": []})
    code, rep = call(capsys, "emb", "--graph", path)
    assert code == 0 and len(rep["classes"]) == 6


def test_validate_depends_on_mode(write, capsys):
    path = write("loop.txt", "graphcat graph 1\nedge a b\nboundary\n")
    code, rep = call(capsys, "validate", "--graph", path)
    assert code == 1 and not rep["valid"]
    assert call(capsys, "validate", "--graph", path, "--mode", "extended")[0] == 0


def test_shared_dart_is_a_parse_error(write, capsys):
    path = write("bad.txt", "graphcat graph 1\nedge a b\nvertex v a\nvertex w a\nboundary b\n")
    assert call(capsys, "validate", "--graph", path)[0] == 2


def test_parse_error_exit_code(write, capsys):
    path = write("bad.txt", "graphcat graph 1\nedge a\n")
    code, rep = call(capsys, "validate", "--graph", path)
    assert code == 2 and "line 2" in rep["error"]


def test_missing_file(capsys):
    code, rep = call(capsys, "validate", "--graph", "/nonexistent/graph.txt")
    assert code == 2 and "error" in rep


def test_check_map_categories(write, capsys):
    g, x = detour(), detour_orientation()
    f = from_embedding(representative(g, EmbClass({"u", "w"}, {"i†", "x0", "x1"})))
    doc = write("m.txt", emit_map(f, restrict_orientation(f, x), x))
    code, rep = call(capsys, "check-map", "--map", doc, "--category", "u")
    assert code == 0 and rep["ok"]
    code, rep = call(capsys, "check-map", "--map", doc, "--category", "properadic")
    assert code == 1 and "image not structured" in rep["diagnostics"]
    code, rep = call(capsys, "properadic-check", "--map", doc)
    assert code == 1


def test_compose_and_factor(write, capsys):
    s, t = star(2), line(2)
    m = enumerate_maps(s, t)[-1]
    first = write("a.txt", emit_map(m))
    ident = from_embedding(representative(t, EmbClass({"v0", "v1"}, {"e0-", "e2+"})))
    second = write("b.txt", emit_map(ident))
    code, rep = call(capsys, "compose", first, second)
    assert code == 0 and parse_map(rep["document"])[0] == m
    code, rep = call(capsys, "compose", second, first)
    assert code == 1
    code, rep = call(capsys, "factor", "--map", first)
    assert code == 0 and set(rep) == {"active", "inert", "middle"}


def test_substitute(write, capsys):
    req = write("r.txt", emit_substitution(star(2), {"v": (line(2), {"1": "e0-", "2": "e2+"})}))
    code, rep = call(capsys, "substitute", "--request", req)
    assert code == 0 and "vertex" in rep["graph"]
    bad = write("r2.txt", emit_substitution(star(2), {"v": (star(3), {"1": "1†", "2": "2†"})}))
    assert call(capsys, "substitute", "--request", bad)[0] == 1


def test_complement(write, capsys):
    g = line(3)
    f = representative(g, EmbClass({"v0", "v1"}, {"e0-", "e2+"}))
    doc = write("e.txt", emit_map(f))
    code, rep = call(capsys, "complement", "--embedding", doc)
    assert code == 0 and rep["vertex"] == "vG"
    nonetale = write("n.txt", emit_map(from_embedding(f)))
    assert call(capsys, "complement", "--embedding", nonetale)[0] == 2


def test_enumerate_maps_and_caps(write, capsys):
    a = write("a.txt", emit_graph(star(2)))
    b = write("b.txt", emit_graph(line(2)))
    code, rep = call(capsys, "enumerate-maps", "--source", a, "--target", b)
    assert code == 0 and rep["count"] == 12
    big = write("c.txt", emit_graph(line(4)))
    assert call(capsys, "enumerate-maps", "--source", big, "--target", b)[0] == 2


def test_oracle(capsys):
    code, rep = call(capsys, "oracle", "--equivalence", "new-old")
    assert code == 2 and "uncapped" in rep["error"]
    code, rep = call(capsys, "oracle", "--equivalence", "new-old",
                     "--max-vertices", "2", "--max-arcs", "6")
    assert code == 0 and rep["checked"] == 81 and rep["mismatches"] == []
    code, rep = call(capsys, "oracle", "--equivalence", "emb",
                     "--max-vertices", "3", "--max-arcs", "8", "--mode", "extended")
    assert code == 0 and rep["mismatches"] == []


def test_tree_check(write, capsys):
    m = enumerate_maps(star(2), line(2))[0]
    doc = write("t.txt", emit_map(m))
    assert call(capsys, "tree-check", "--map", doc)[0] == 0
    assert call(capsys, "tree-check", "--map", doc, "--unions-only")[0] == 0
    c = write("c.txt", emit_map(from_embedding(representative(detour(), edge_class(detour(), "i")))))
    code, rep = call(capsys, "tree-check", "--map", c)
    assert code == 1 and rep["diagnostics"] == ["both graphs must be trees"]


def test_segal_verbs(capsys):
    code, rep = call(capsys, "segal", "check", "--catalog", "U", "--presheaf", "coloring:2:1")
    assert code == 0 and rep["segal"]
    code, rep = call(capsys, "segal", "check", "--catalog", "U", "--presheaf", "representable:loop1")
    assert code == 1 and "loop1" in rep["failures"]
    code, rep = call(capsys, "segal", "lke", "--functor", "Omega->Ucyc")
    assert code == 0 and rep["segal"] and rep["sizes"]["star3"] == 3
    code, rep = call(capsys, "segal", "check", "--catalog", "nope")
    assert code == 2


def test_segal_presheaf_file(write, capsys):
    code, rep = call(capsys, "segal", "restrict", "--functor", "U0->U",
                     "--presheaf", "coloring:1:2", "--documents")
    assert code == 0
    doc = write("p.txt", rep["presheaf"])
    code, rep = call(capsys, "segal", "check", "--catalog", "U0", "--presheaf", doc)
    assert code == 0 and rep["segal"]


def test_dot(write, capsys):
    path = write("g.txt", emit_graph(detour(), detour_orientation()))
    code, out = call(capsys, "dot", "--graph", path)
    assert code == 0 and out.startswith("digraph")


def test_usage_error(capsys):
    assert run(["no-such-verb"]) == 2
    capsys.readouterr()
