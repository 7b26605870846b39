"""DOT export.  Loose ends are drawn as edges to small point nodes."""
from __future__ import annotations

from .core import Graph
from .directed import Orientation


def _quote(x: str) -> str:
    return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, x: Orientation | None = None, name: str = "G") -> str:
    directed = x is not None
    arrow = "->" if directed else "--"
    out = [f"{'digraph' if directed else 'graph'} {_quote(name)} {{"]
    for v in g.vertices:
        out.append(f"  {_quote(v)} [shape=circle];")

    def end(a):
        if a in g.darts:
            return g.attach[a]
        return "ð:" + a

    for a in sorted(set(g.arcs) - g.darts):
        if a in g.boundary or not g.vertices:
            out.append(f"  {_quote(end(a))} [shape=point];")
    for e in g.edges:
        a, b = sorted(e)
        if directed and x[a] < 0:
            a, b = b, a
        if not g.boundary and not g.vertices:
            # nodeless loop: one point with a loop through it
            out.append(f"  {_quote(end(a))} {arrow} {_quote(end(a))} [label={_quote(a)}];")
            break
        out.append(f"  {_quote(end(a))} {arrow} {_quote(end(b))} "
                   f"[taillabel={_quote(a)}, headlabel={_quote(b)}];")
    out.append("}")
    return "\n".join(out) + "\n"
