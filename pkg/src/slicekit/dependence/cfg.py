"""Statement-level control-flow graphs for normalized MiniJ programs.

Nodes are ``ENTRY``, ``EXIT``, integer labels, and -- for ``for``
statements with a non-empty header list -- the sub-nodes
``("init", L)`` and ``("update", L)``.  Sub-nodes run the header's
assignments; they share the header's label everywhere outside the CFG.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Union

from ..lang import Decl, For, If, Program, While

ENTRY = "entry"
EXIT = "exit"

Node = Union[str, int, tuple]


def node_label(node: Node) -> int | None:
    """The program label a CFG node belongs to (``None`` for Entry/Exit)."""
    if isinstance(node, int):
        return node
    if isinstance(node, tuple):
        return node[1]
    return None


@dataclass(frozen=True)
class Cfg:
    nodes: tuple[Node, ...]
    edges: tuple[tuple[Node, Node, str], ...]
    program: Program = field(compare=False, repr=False)

    def __post_init__(self):
        succ: dict[Hashable, list] = defaultdict(list)
        pred: dict[Hashable, list] = defaultdict(list)
        for a, b, tag in self.edges:
            succ[a].append((b, tag))
            pred[b].append((a, tag))
        object.__setattr__(self, "_succ", dict(succ))
        object.__setattr__(self, "_pred", dict(pred))

    def successors(self, node: Node) -> list[tuple[Node, str]]:
        return self._succ.get(node, [])

    def predecessors(self, node: Node) -> list[tuple[Node, str]]:
        return self._pred.get(node, [])

    def is_predicate(self, node: Node) -> bool:
        return len(self.successors(node)) == 2 and node != ENTRY

    def nodes_of(self, label: int) -> list[Node]:
        return [n for n in self.nodes if node_label(n) == label]

    def payload(self, node: Node):
        """The syntax a node executes: a statement, or a tuple of header assigns."""
        if isinstance(node, tuple):
            part, label = node
            return getattr(self.program[label], part)
        if isinstance(node, int):
            return self.program[node]
        return None


def build_cfg(program: Program) -> Cfg:
    """Structured CFG: loop predicates branch back, else-if chains nest."""
    nodes: list[Node] = [ENTRY]
    edges: list[tuple[Node, Node, str]] = []

    def add(node, preds):
        nodes.append(node)
        for p, tag in preds:
            edges.append((p, node, tag))

    def seq(stmts, preds):
        for s in stmts:
            preds = stmt(s, preds)
        return preds

    def stmt(s, preds):
        L = s.label
        if isinstance(s, If):
            add(L, preds)
            out = seq(s.then, [(L, "true")])
            return out + seq(s.orelse or (), [(L, "false")])
        if isinstance(s, While):
            add(L, preds)
            for p, tag in seq(s.body, [(L, "true")]):
                edges.append((p, L, tag))
            return [(L, "false")]
        if isinstance(s, For):
            if s.init:
                add(("init", L), preds)
                preds = [(("init", L), "seq")]
            add(L, preds)
            tail = seq(s.body, [(L, "true")])
            if s.update:
                add(("update", L), tail)
                tail = [(("update", L), "seq")]
            for p, tag in tail:
                edges.append((p, L, tag))
            return [(L, "false")]
        add(L, preds)
        return [(L, "seq")]

    preds = [(ENTRY, "seq")]
    for d in program.decls:
        preds = stmt(d, preds)
    preds = seq(program.body, preds)
    nodes.append(EXIT)
    for p, tag in preds:
        edges.append((p, EXIT, tag))
    return Cfg(tuple(nodes), tuple(edges), program)


def is_decl(cfg: Cfg, node: Node) -> bool:
    return isinstance(node, int) and isinstance(cfg.program[node], Decl)
