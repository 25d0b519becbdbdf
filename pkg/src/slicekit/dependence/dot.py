"""Graphviz DOT rendering of CFGs and PDGs."""

from __future__ import annotations

from collections.abc import Iterable

from ..lang.printer import assign_text, statement_text
from .cfg import ENTRY, EXIT, Cfg, node_label
from .pdg import Pdg


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_id(node) -> str:
    if isinstance(node, tuple):
        return f"L{node[1]}_{node[0]}"
    if isinstance(node, int):
        return f"L{node}"
    return node


def _sort_key(node):
    if node == ENTRY:
        return (0, 0, "")
    if node == EXIT:
        return (2, 0, "")
    part = node[0] if isinstance(node, tuple) else ""
    return (1, node_label(node), part)


def _edge_key(e):
    return (_sort_key(e[0]), _sort_key(e[1]), e[2])


def export_dot(graph: Pdg | Cfg, highlight: Iterable[int] = ()) -> str:
    """DOT digraph; data edges solid, control edges dashed.

    Nodes are ordered by label and titled ``L<label>: <statement>``.
    Labels in ``highlight`` are filled (used to show a slice).
    """
    highlight = set(highlight)
    program = graph.program
    lines = []
    lines.append("digraph pdg {" if isinstance(graph, Pdg) else "digraph cfg {")
    nodes = sorted(graph.nodes, key=_sort_key)
    lines.append("  node [shape=box, fontname=monospace];")
    for n in nodes:
        if n in (ENTRY, EXIT):
            title = n.capitalize()
        elif isinstance(n, tuple):
            part, label = n
            body = ", ".join(assign_text(a) for a in getattr(program[label], part))
            title = f"L{label}.{part}: {body}"
        else:
            title = f"L{n}: {statement_text(program[n])}"
        attrs = f"label={_quote(title)}"
        if node_label(n) in highlight:
            attrs += ", style=filled, fillcolor=lightgrey"
        lines.append(f"  {_node_id(n)} [{attrs}];")
    if isinstance(graph, Pdg):
        edges = sorted(((e.src, e.dst, e.kind, e.tag) for e in graph.edges), key=lambda e: (_edge_key(e), e[3]))
        for src, dst, kind, tag in edges:
            style = "solid" if kind == "data" else "dashed"
            lines.append(
                f"  {_node_id(src)} -> {_node_id(dst)} [style={style}, label={_quote(tag)}];"
            )
    else:
        for src, dst, tag in sorted(graph.edges, key=_edge_key):
            attrs = "" if tag == "seq" else f" [label={_quote(tag)}]"
            lines.append(f"  {_node_id(src)} -> {_node_id(dst)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
