"""Line-based text documents for graphs, classes, maps, catalogs and presheaves.

Every document starts with ``graphcat <kind> 1``.  Graph bodies are lists of
``edge a b`` / ``vertex v d1 d2 ..`` / ``boundary a b ..`` lines, optionally
followed by ``sign a +`` lines for an orientation.  Larger documents group
graph bodies into ``@section`` blocks.  Names may not contain whitespace or
the separators ``|`` and ``>``; ``#`` starts a comment line.
"""
from __future__ import annotations

from collections.abc import Mapping

from .core import Graph, GraphError
from .directed import Orientation
from .embeddings import EmbClass, EtaleMap
from .maps import ClassicalMap, NewGraphMap

VERSION = "1"
_FORBIDDEN = set("|>#@") | {" ", "\t", "\n"}


class FormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _name(x: str) -> str:
    if not x or set(x) & _FORBIDDEN or x == "=>":
        raise FormatError(f"name {x!r} cannot be written")
    return x


def _token(x: str) -> str:
    if not x or x == "=>" or x[0] in "#@" or any(ch.isspace() for ch in x):
        raise FormatError(f"element {x!r} cannot be written")
    return x


# tokenizing

def _lines(text: str, kind: str) -> list[tuple[int, list[str]]]:
    out = []
    header = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line.split()
            if header[:2] != ["graphcat", kind]:
                raise FormatError(f"expected a 'graphcat {kind}' header", no)
            if header[2:] != [VERSION]:
                raise FormatError(f"unsupported version {' '.join(header[2:])}", no)
            continue
        out.append((no, line.split()))
    if header is None:
        raise FormatError(f"empty document, expected 'graphcat {kind} {VERSION}'")
    return out


def _sections(lines) -> list[tuple[int, list[str], list]]:
    """Split at ``@name args`` lines; lines before any section go to ``@``."""
    out = [(0, ["@"], [])]
    for no, toks in lines:
        if toks[0].startswith("@"):
            out.append((no, toks, []))
        else:
            out[-1][2].append((no, toks))
    return out


def _kind(text: str) -> str:
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            toks = line.split()
            if len(toks) >= 2 and toks[0] == "graphcat":
                return toks[1]
            break
    raise FormatError("missing 'graphcat <kind>' header", 1)


# graphs

def graph_lines(g: Graph, x: Orientation | None = None) -> list[str]:
    out = []
    for e in g.edges:
        a, b = sorted(e)
        out.append(f"edge {_name(a)} {_name(b)}")
    for v in g.vertices:
        out.append(" ".join(["vertex", _name(v), *g.nbhd[v]]))
    out.append(" ".join(["boundary", *sorted(g.boundary)]))
    if x is not None:
        for a in g.arcs:
            out.append(f"sign {a} {'+' if x[a] > 0 else '-'}")
    return out


def parse_graph_lines(lines) -> tuple[Graph, Orientation | None]:
    arcs, inv, nbhd, boundary, signs = [], {}, {}, None, {}
    for no, toks in lines:
        head, args = toks[0], toks[1:]
        if head == "edge":
            if len(args) != 2 or args[0] == args[1]:
                raise FormatError("edge needs two distinct arcs", no)
            a, b = args
            if a in inv or b in inv:
                raise FormatError(f"arc listed in two edges: {a} {b}", no)
            arcs += [a, b]
            inv[a], inv[b] = b, a
        elif head == "vertex":
            if not args:
                raise FormatError("vertex needs a name", no)
            if args[0] in nbhd:
                raise FormatError(f"vertex {args[0]} listed twice", no)
            nbhd[args[0]] = args[1:]
        elif head == "boundary":
            if boundary is not None:
                raise FormatError("boundary listed twice", no)
            boundary = args
        elif head == "sign":
            if len(args) != 2 or args[1] not in "+-":
                raise FormatError("sign needs an arc and + or -", no)
            signs[args[0]] = 1 if args[1] == "+" else -1
        else:
            raise FormatError(f"unknown graph field {head!r}", no)
    try:
        g = Graph(arcs, inv, nbhd, boundary=boundary)
    except GraphError as exc:
        raise FormatError(str(exc)) from None
    if signs and set(signs) != set(g.arcs):
        raise FormatError("signs must cover every arc")
    return g, (Orientation(signs) if signs else None)


def emit_graph(g: Graph, x: Orientation | None = None) -> str:
    return "\n".join([f"graphcat graph {VERSION}", *graph_lines(g, x)]) + "\n"


def parse_graph(text: str) -> tuple[Graph, Orientation | None]:
    return parse_graph_lines(_lines(text, "graph"))


# classes

def class_tokens(c: EmbClass) -> list[str]:
    return [*sorted(c.vertices), "|", *sorted(c.boundary)]


def parse_class_tokens(toks: list[str], no: int | None = None) -> EmbClass:
    if toks.count("|") != 1:
        raise FormatError("a class needs exactly one '|'", no)
    i = toks.index("|")
    return EmbClass(frozenset(toks[:i]), frozenset(toks[i + 1:]))


def emit_class(c: EmbClass) -> str:
    return f"graphcat class {VERSION}\n" + " ".join(["class", *class_tokens(c)]) + "\n"


def parse_class(text: str) -> EmbClass:
    lines = _lines(text, "class")
    if len(lines) != 1 or lines[0][1][0] != "class":
        raise FormatError("expected a single 'class' line")
    no, toks = lines[0]
    return parse_class_tokens(toks[1:], no)


# maps

def _map_body(kind, source, target, arc_map, xs=None, xt=None) -> list[str]:
    out = [f"kind {kind}", "@source", *graph_lines(source, xs),
           "@target", *graph_lines(target, xt), "@arcs"]
    out += [f"{a} > {arc_map[a]}" for a in source.arcs]
    return out


def emit_map(m, xs: Orientation | None = None, xt: Orientation | None = None) -> str:
    """Emit a NewGraphMap, ClassicalMap or EtaleMap."""
    if isinstance(m, NewGraphMap):
        body = _map_body("new", m.source, m.target, m.arc_map, xs, xt) + ["@classes"]
        for c in sorted(m.emb_map, key=EmbClass.sort_key):
            body.append(" ".join([*class_tokens(c), ">", *class_tokens(m(c))]))
    elif isinstance(m, ClassicalMap):
        body = _map_body("classical", m.source, m.target, m.arc_map, xs, xt) + ["@vertices"]
        for v in m.source.vertices:
            body.append(" ".join([v, ">", *class_tokens(m.vertex_map[v])]))
    elif isinstance(m, EtaleMap):
        body = _map_body("etale", m.source, m.target, m.arc_map, xs, xt) + ["@vertices"]
        for v in m.source.vertices:
            body.append(f"{v} > {m.vertex_map[v]}")
    else:
        raise TypeError(f"cannot emit {type(m).__name__}")
    return "\n".join([f"graphcat map {VERSION}", *body]) + "\n"


def _split_arrow(toks, no):
    if toks.count(">") != 1:
        raise FormatError("expected exactly one '>'", no)
    i = toks.index(">")
    return toks[:i], toks[i + 1:]


def parse_map(text: str) -> tuple[object, Orientation | None, Orientation | None]:
    """Return (map, source orientation, target orientation)."""
    secs = _sections(_lines(text, "map"))
    top = secs[0][2]
    if len(top) != 1 or top[0][1][0] != "kind" or len(top[0][1]) != 2:
        raise FormatError("expected 'kind new|classical|etale' before any section")
    kind = top[0][1][1]
    if kind not in ("new", "classical", "etale"):
        raise FormatError(f"unknown map kind {kind!r}", top[0][0])
    by = {}
    for no, toks, body in secs[1:]:
        if toks[0] in by:
            raise FormatError(f"section {toks[0]} repeated", no)
        by[toks[0]] = body
    want = {"new": "@classes"}.get(kind, "@vertices")
    for s in ("@source", "@target", "@arcs", want):
        if s not in by:
            raise FormatError(f"missing section {s}")
    src, xs = parse_graph_lines(by["@source"])
    tgt, xt = parse_graph_lines(by["@target"])
    am = {}
    for no, toks in by["@arcs"]:
        left, right = _split_arrow(toks, no)
        if len(left) != 1 or len(right) != 1:
            raise FormatError("arc lines read 'a > b'", no)
        am[left[0]] = right[0]
    if kind == "new":
        table = {}
        for no, toks in by["@classes"]:
            left, right = _split_arrow(toks, no)
            table[parse_class_tokens(left, no)] = parse_class_tokens(right, no)
        return NewGraphMap(src, tgt, am, table), xs, xt
    vm = {}
    for no, toks in by["@vertices"]:
        left, right = _split_arrow(toks, no)
        if len(left) != 1:
            raise FormatError("vertex lines read 'v > ...'", no)
        if kind == "classical":
            vm[left[0]] = parse_class_tokens(right, no)
        else:
            if len(right) != 1:
                raise FormatError("vertex lines read 'v > w'", no)
            vm[left[0]] = right[0]
    if kind == "classical":
        return ClassicalMap(src, tgt, am, vm), xs, xt
    return EtaleMap(src, tgt, am, vm), xs, xt


# substitution requests

def parse_substitution(text: str):
    """``@host`` graph, then ``@piece v`` blocks with graph lines and ``beta d b`` lines."""
    secs = _sections(_lines(text, "substitution"))
    mode = "plain"
    for no, toks in secs[0][2]:
        if toks[0] == "mode" and len(toks) == 2:
            mode = toks[1]
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no)
    host, assignment = None, {}
    for no, toks, body in secs[1:]:
        if toks[0] == "@host":
            host, _ = parse_graph_lines(body)
        elif toks[0] == "@piece" and len(toks) == 2:
            beta = {}
            glines = []
            for lno, ltoks in body:
                if ltoks[0] == "beta":
                    if len(ltoks) != 3:
                        raise FormatError("beta lines read 'beta dart arc'", lno)
                    beta[ltoks[1]] = ltoks[2]
                else:
                    glines.append((lno, ltoks))
            piece, _ = parse_graph_lines(glines)
            assignment[toks[1]] = (piece, beta)
        else:
            raise FormatError(f"unknown section {' '.join(toks)}", no)
    if host is None:
        raise FormatError("missing @host section")
    return host, assignment, mode


def emit_substitution(host: Graph, assignment: Mapping, mode: str = "plain") -> str:
    out = [f"graphcat substitution {VERSION}", f"mode {mode}", "@host", *graph_lines(host)]
    for v in sorted(assignment):
        piece, beta = assignment[v]
        out += [f"@piece {v}", *graph_lines(piece)]
        out += [f"beta {d} {beta[d]}" for d in sorted(beta)]
    return "\n".join(out) + "\n"


# catalogs and presheaves

def emit_catalog(cat) -> str:
    out = [f"graphcat catalog {VERSION}", f"mode {cat.mode}"]
    for a, o in cat.objects.items():
        out += [f"@object {_name(a)}", *graph_lines(o.graph, o.orientation)]
    for (a, b), mors in cat.homs.items():
        for mor in mors:
            out.append(f"@morphism {a} {b}")
            out += [f"{x} > {mor.map.arc_map[x]}" for x in mor.map.source.arcs]
            for c in sorted(mor.map.emb_map, key=EmbClass.sort_key):
                out.append(" ".join(["class", *class_tokens(c), ">",
                                     *class_tokens(mor.map(c))]))
    return "\n".join(out) + "\n"


def parse_catalog(text: str):
    from .segal import Catalog, Obj

    secs = _sections(_lines(text, "catalog"))
    mode = "plain"
    for no, toks in secs[0][2]:
        if toks[0] == "mode" and len(toks) == 2:
            mode = toks[1]
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no)
    objects, homs = {}, {}
    for no, toks, body in secs[1:]:
        if toks[0] == "@object" and len(toks) == 2:
            g, x = parse_graph_lines(body)
            objects[toks[1]] = Obj(g, x)
        elif toks[0] == "@morphism" and len(toks) == 3:
            a, b = toks[1:]
            if a not in objects or b not in objects:
                raise FormatError("morphism between unknown objects", no)
            am, table = {}, {}
            for lno, ltoks in body:
                if ltoks[0] == "class":
                    left, right = _split_arrow(ltoks[1:], lno)
                    table[parse_class_tokens(left, lno)] = parse_class_tokens(right, lno)
                else:
                    left, right = _split_arrow(ltoks, lno)
                    am[left[0]] = right[0]
            m = NewGraphMap(objects[a].graph, objects[b].graph, am, table)
            homs.setdefault((a, b), []).append(m)
        else:
            raise FormatError(f"unknown section {' '.join(toks)}", no)
    for a in objects:
        for b in objects:
            homs.setdefault((a, b), [])
    return Catalog(objects, homs, mode)


def emit_presheaf(p) -> str:
    from .segal import materialize

    t = materialize(p)
    out = [f"graphcat presheaf {VERSION}"]
    for a in t.catalog.objects:
        out += [f"@elements {a}", *(_token(e) for e in t.elements(a))]
    for name, table in t.tables.items():
        out.append(f"@restrict {name}")
        out += [f"{e} => {table[e]}" for e in sorted(table)]
    return "\n".join(out) + "\n"


def parse_presheaf(text: str, catalog):
    from .segal import TablePresheaf

    elements, tables = {}, {}
    for no, toks, body in _sections(_lines(text, "presheaf"))[1:]:
        if toks[0] == "@elements" and len(toks) == 2:
            if toks[1] not in catalog.objects:
                raise FormatError(f"unknown object {toks[1]}", no)
            elements[toks[1]] = [t[0] for _, t in body]
        elif toks[0] == "@restrict" and len(toks) == 2:
            if toks[1] not in catalog.morphisms:
                raise FormatError(f"unknown morphism {toks[1]}", no)
            table = {}
            for lno, ltoks in body:
                if len(ltoks) != 3 or ltoks[1] != "=>":
                    raise FormatError("restriction lines read 'e => f'", lno)
                table[ltoks[0]] = ltoks[2]
            tables[toks[1]] = table
        else:
            raise FormatError(f"unknown section {' '.join(toks)}", no)
    for a in catalog.objects:
        elements.setdefault(a, [])
    for name, mor in catalog.morphisms.items():
        table = tables.setdefault(name, {})
        if set(table) != set(elements[mor.target]):
            raise FormatError(f"restriction along {name} is not total")
        if not set(table.values()) <= set(elements[mor.source]):
            raise FormatError(f"restriction along {name} leaves {mor.source}")
    return TablePresheaf(catalog, elements, tables)
