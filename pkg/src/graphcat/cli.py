"""Command-line front end.

Every verb prints one JSON report.  Exit status: 0 when the check holds,
1 when it fails with diagnostics, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .core import EXTENDED, PLAIN, GraphError, is_tree, validate
from .corpus import extended_corpus, plain_corpus, trees
from .directed import (DirectedGraph, check_oriented_map, is_acyclic,
                       is_dendroidal, is_dioperadic,
                       properadic_restriction)
from .dot import to_dot
from .embeddings import EtaleMap, check_embedding, enumerate_embeddings
from .maps import (CapError, ClassicalMap, NewGraphMap, check_classical,
                   check_new_map, complement, compose, enumerate_maps, factor,
                   from_classical, substitute)
from .trees import check_tree_map

CATEGORIES = ("u", "utilde", "u-oriented", "utilde-oriented", "tree", "cyclic",
              "dioperadic", "properadic", "dendroidal")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _mode(args) -> str:
    return EXTENDED if getattr(args, "mode", "plain") == "extended" else PLAIN


def _load_new_map(path: str, mode: str):
    m, xs, xt = formats.parse_map(_read(path))
    if isinstance(m, ClassicalMap):
        diag = check_classical(m, mode)
        if diag:
            return None, xs, xt, diag
        m = from_classical(m)
    elif isinstance(m, EtaleMap):
        diag = check_embedding(m, mode)
        if diag:
            return None, xs, xt, diag
        from .maps import from_embedding
        m = from_embedding(m)
    return m, xs, xt, []


def _map_doc(m, xs=None, xt=None) -> str:
    return formats.emit_map(m, xs, xt)


# verbs

def cmd_validate(args):
    g, x = formats.parse_graph(_read(args.graph))
    diag = validate(g, _mode(args))
    if not diag and x is not None:
        from .directed import orientation_diagnostics
        diag = orientation_diagnostics(g, x)
    return not diag, {"valid": not diag, "diagnostics": diag}


def cmd_emb(args):
    g, _ = formats.parse_graph(_read(args.graph))
    diag = validate(g, _mode(args))
    if diag:
        return False, {"diagnostics": diag}
    classes = enumerate_embeddings(g)
    return True, {"count": len(classes), "classes": [repr(c) for c in classes]}


def _need_orientations(xs, xt):
    if xs is None or xt is None:
        raise UsageError("this category needs 'sign' lines in both graphs")


def check_in_category(m: NewGraphMap, xs, xt, category: str) -> list[str]:
    s, t = m.source, m.target
    if category in ("u", "utilde"):
        return check_new_map(m, EXTENDED if category == "utilde" else PLAIN)
    if category in ("u-oriented", "utilde-oriented"):
        _need_orientations(xs, xt)
        return check_oriented_map(m, xs, xt,
                                  EXTENDED if category.startswith("utilde") else PLAIN)
    if category in ("tree", "cyclic", "dioperadic", "dendroidal"):
        if not (is_tree(s) and is_tree(t)):
            return ["both graphs must be trees"]
    if category == "tree":
        diag = check_new_map(m)
        return diag or check_tree_map(m)
    if category == "cyclic":
        if not (s.boundary and t.boundary):
            return ["cyclic trees need a non-empty boundary"]
        return check_new_map(m)
    _need_orientations(xs, xt)
    if category == "dioperadic":
        return [] if is_dioperadic(m, xs, xt) else check_oriented_map(m, xs, xt)
    if category == "dendroidal":
        for name, g, x in (("source", s, xs), ("target", t, xt)):
            if not is_dendroidal(DirectedGraph(g, x)):
                return [f"{name} is not dendroidal"]
        return check_oriented_map(m, xs, xt)
    if category == "properadic":
        diag = check_oriented_map(m, xs, xt)
        if diag:
            return diag
        for name, g, x in (("source", s, xs), ("target", t, xt)):
            if not is_acyclic(DirectedGraph(g, x)):
                return [f"{name} is not acyclic"]
        try:
            properadic_restriction(m, xs, xt)
        except GraphError as exc:
            return [str(exc)]
        return []
    raise UsageError(f"unknown category {category}")


def cmd_check_map(args):
    mode = EXTENDED if args.category.startswith("utilde") else PLAIN
    m, xs, xt, diag = _load_new_map(args.map, mode)
    if not diag:
        diag = check_in_category(m, xs, xt, args.category)
    return not diag, {"category": args.category, "ok": not diag, "diagnostics": diag}


def _checked(path, mode):
    m, xs, xt, diag = _load_new_map(path, mode)
    diag = diag or check_new_map(m, mode)
    if diag:
        raise _Fail({"map": path, "diagnostics": diag})
    return m, xs, xt


class _Fail(Exception):
    def __init__(self, report):
        self.report = report


def cmd_compose(args):
    mode = _mode(args)
    first, xs, _ = _checked(args.first, mode)
    second, _, xt = _checked(args.second, mode)
    if first.target != second.source:
        return False, {"diagnostics": ["the maps are not composable"]}
    return True, {"document": _map_doc(compose(second, first), xs, xt)}


def cmd_factor(args):
    mode = _mode(args)
    m, _, _ = _checked(args.map, mode)
    f = factor(m, EXTENDED)
    return True, {"active": _map_doc(f.active), "inert": _map_doc(f.inert),
                  "middle": formats.emit_graph(f.middle)}


def cmd_substitute(args):
    host, assignment, mode = formats.parse_substitution(_read(args.request))
    mode = EXTENDED if mode == "extended" else PLAIN
    try:
        sub = substitute(host, assignment, mode)
    except GraphError as exc:
        return False, {"diagnostics": [str(exc)]}
    return True, {"graph": formats.emit_graph(sub.graph),
                  "pieces": {v: _map_doc(p) for v, p in sorted(sub.pieces.items())}}


def cmd_complement(args):
    f, _, _ = formats.parse_map(_read(args.embedding))
    if not isinstance(f, EtaleMap):
        raise UsageError("complement needs a map document of kind etale")
    diag = check_embedding(f, _mode(args))
    if diag:
        return False, {"diagnostics": diag}
    k, v, alpha = complement(f)
    return True, {"graph": formats.emit_graph(k), "vertex": v, "map": _map_doc(alpha)}


def cmd_enumerate(args):
    g, _ = formats.parse_graph(_read(args.source))
    h, _ = formats.parse_graph(_read(args.target))
    category = "Utilde" if args.category == "utilde" else "U"
    maps = enumerate_maps(g, h, category, args.max_vertices, args.max_arcs)
    report = {"count": len(maps)}
    if args.documents:
        report["maps"] = [_map_doc(m) for m in maps]
    return True, report


def cmd_oracle(args):
    if args.max_vertices is None or args.max_arcs is None:
        raise UsageError("the oracle refuses uncapped runs; pass --max-vertices and --max-arcs")
    from .oracle import brute_force_embeddings, brute_force_new_maps
    corpus = extended_corpus() if args.mode == "extended" else plain_corpus()
    graphs = {a: g for a, g in corpus.items()
              if len(g.vertices) <= args.max_vertices and len(g.arcs) <= args.max_arcs}
    mismatches = []
    if args.equivalence == "emb":
        for a, g in graphs.items():
            keys, count = brute_force_embeddings(g, args.mode == "extended")
            mine = {(c.vertices, c.boundary) for c in enumerate_embeddings(g)}
            if keys != mine or count != len(mine):
                mismatches.append(a)
        checked = len(graphs)
    else:
        category = "Utilde" if args.mode == "extended" else "U"
        mode = _mode(args)
        checked = 0
        for a, g in graphs.items():
            for b, h in graphs.items():
                checked += 1
                new = set(brute_force_new_maps(g, h, mode))
                old = set(enumerate_maps(g, h, category, None, None))
                if new != old:
                    mismatches.append(f"{a}->{b}")
    return not mismatches, {"equivalence": args.equivalence, "checked": checked,
                            "mismatches": mismatches}


def cmd_tree_check(args):
    m, _, _, diag = _load_new_map(args.map, PLAIN)
    if not diag:
        if not (is_tree(m.source) and is_tree(m.target)):
            diag = ["both graphs must be trees"]
        else:
            diag = check_tree_map(m, intersections=not args.unions_only)
    return not diag, {"ok": not diag, "diagnostics": diag}


def cmd_properadic_check(args):
    m, xs, xt, diag = _load_new_map(args.map, PLAIN)
    if not diag:
        diag = check_in_category(m, xs, xt, "properadic")
    return not diag, {"ok": not diag, "diagnostics": diag}


def _segal_setup(args):
    from . import segal
    cats = segal.standard_catalogs(plain_corpus(), extended_corpus(), trees())
    return segal, cats, segal.standard_functors(cats)


def _presheaf(segal, cat, choice: str):
    if choice == "terminal":
        return segal.Terminal(cat)
    if choice == "orientation":
        return segal.OrientationPresheaf(cat)
    if choice.startswith("coloring:"):
        try:
            _, k, n = choice.split(":")
            return segal.Coloring(cat, int(k), int(n))
        except ValueError:
            raise UsageError("coloring presheaves read coloring:COLORS:MODULUS") from None
    if choice.startswith("representable:"):
        obj = choice.split(":", 1)[1]
        if obj not in cat.objects:
            raise UsageError(f"unknown object {obj}")
        return segal.Representable(cat, obj)
    return formats.parse_presheaf(_read(choice), cat)


def cmd_segal(args):
    segal, cats, functors = _segal_setup(args)
    if args.segal_verb == "check":
        if args.catalog_file:
            cat = formats.parse_catalog(_read(args.catalog_file))
        elif args.catalog in cats:
            cat = cats[args.catalog]
        else:
            raise UsageError(f"unknown catalog {args.catalog}; choose from {sorted(cats)}")
        p = _presheaf(segal, cat, args.presheaf)
        try:
            rep = segal.is_segal(p, flat=args.flat)
        except GraphError as exc:
            raise UsageError(str(exc)) from None
        return rep.ok, {"segal": rep.ok, "flat": args.flat, "failures": rep.failures}
    if args.functor not in functors:
        raise UsageError(f"unknown functor {args.functor}; choose from {sorted(functors)}")
    f = functors[args.functor]
    if args.segal_verb == "restrict":
        out = segal.restrict_presheaf(f, _presheaf(segal, f.target, args.presheaf))
    else:
        out = segal.lke_presheaf(f, _presheaf(segal, f.source, args.presheaf))
    rep = segal.is_segal(out)
    sizes = {a: len(out.elements(a)) for a in out.catalog.objects}
    report = {"segal": rep.ok, "failures": rep.failures, "sizes": sizes}
    if args.documents:
        report["presheaf"] = formats.emit_presheaf(out)
    return True, report


def cmd_dot(args):
    g, x = formats.parse_graph(_read(args.graph))
    sys.stdout.write(to_dot(g, x))
    return True, None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphcat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    def mode(sp):
        sp.add_argument("--mode", choices=("plain", "extended"), default="plain")

    sp = add("validate", cmd_validate)
    sp.add_argument("--graph", required=True)
    mode(sp)
    sp = add("emb", cmd_emb)
    sp.add_argument("--graph", required=True)
    mode(sp)
    sp = add("check-map", cmd_check_map)
    sp.add_argument("--map", required=True)
    sp.add_argument("--category", choices=CATEGORIES, default="u")
    sp = add("compose", cmd_compose, help="compose FIRST then SECOND")
    sp.add_argument("first")
    sp.add_argument("second")
    mode(sp)
    sp = add("factor", cmd_factor)
    sp.add_argument("--map", required=True)
    mode(sp)
    sp = add("substitute", cmd_substitute)
    sp.add_argument("--request", required=True)
    sp = add("complement", cmd_complement)
    sp.add_argument("--embedding", required=True)
    mode(sp)
    sp = add("enumerate-maps", cmd_enumerate)
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--category", choices=("u", "utilde"), default="u")
    sp.add_argument("--max-vertices", type=int, default=3)
    sp.add_argument("--max-arcs", type=int, default=8)
    sp.add_argument("--documents", action="store_true")
    sp = add("oracle", cmd_oracle)
    sp.add_argument("--equivalence", choices=("new-old", "emb"), required=True)
    sp.add_argument("--max-vertices", type=int)
    sp.add_argument("--max-arcs", type=int)
    mode(sp)
    sp = add("tree-check", cmd_tree_check)
    sp.add_argument("--map", required=True)
    sp.add_argument("--unions-only", action="store_true")
    sp = add("properadic-check", cmd_properadic_check)
    sp.add_argument("--map", required=True)
    sp = add("segal", cmd_segal)
    ssub = sp.add_subparsers(dest="segal_verb", required=True)
    c = ssub.add_parser("check")
    c.add_argument("--catalog", default="U")
    c.add_argument("--catalog-file")
    c.add_argument("--presheaf", default="terminal")
    c.add_argument("--flat", action="store_true")
    for verb in ("restrict", "lke"):
        c = ssub.add_parser(verb)
        c.add_argument("--functor", required=True)
        c.add_argument("--presheaf", default="terminal")
        c.add_argument("--documents", action="store_true")
    sp = add("dot", cmd_dot)
    sp.add_argument("--graph", required=True)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        ok, report = args.fn(args)
    except _Fail as exc:
        ok, report = False, exc.report
    except (UsageError, formats.FormatError, CapError) as exc:
        print(json.dumps({"error": str(exc)}, ensure_ascii=False))
        return 2
    except GraphError as exc:
        ok, report = False, {"diagnostics": [str(exc)]}
    if report is not None:
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
