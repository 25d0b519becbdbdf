"""Postdominator tree and Ferrante-Ottenstein-Warren control dependence."""

from __future__ import annotations

from dataclasses import dataclass

from .cfg import ENTRY, EXIT, Cfg, Node


@dataclass(frozen=True)
class PostDomTree:
    ipdom: dict  # node -> immediate postdominator; EXIT has no entry

    def chain(self, node: Node) -> list[Node]:
        """``node`` followed by each of its postdominators up to Exit."""
        out = [node]
        while node != EXIT:
            node = self.ipdom[node]
            out.append(node)
        return out

    def postdominates(self, a: Node, b: Node) -> bool:
        """True if ``a`` postdominates ``b`` (reflexively)."""
        return a in self.chain(b)


def postdominators(cfg: Cfg) -> PostDomTree:
    """Immediate postdominators (Cooper/Harvey/Kennedy on the reverse CFG)."""
    order: list[Node] = []
    seen = {EXIT}
    stack = [(EXIT, iter(cfg.predecessors(EXIT)))]
    while stack:
        node, it = stack[-1]
        for p, _ in it:
            if p not in seen:
                seen.add(p)
                stack.append((p, iter(cfg.predecessors(p))))
                break
        else:
            stack.pop()
            order.append(node)
    rpo = order[::-1]
    index = {n: i for i, n in enumerate(rpo)}

    ipdom: dict = {EXIT: EXIT}

    def intersect(a, b):
        while a != b:
            while index[a] > index[b]:
                a = ipdom[a]
            while index[b] > index[a]:
                b = ipdom[b]
        return a

    changed = True
    while changed:
        changed = False
        for n in rpo[1:]:
            done = [s for s, _ in cfg.successors(n) if s in ipdom]
            new = done[0]
            for s in done[1:]:
                new = intersect(s, new)
            if ipdom.get(n) != new:
                ipdom[n] = new
                changed = True
    del ipdom[EXIT]
    return PostDomTree(ipdom)


@dataclass(frozen=True)
class ControlEdge:
    """``dst`` executes or not depending on the ``tag`` branch of ``src``."""

    src: Node
    dst: Node
    tag: str


def control_dependences(cfg: Cfg, pdt: PostDomTree) -> frozenset[ControlEdge]:
    """Control dependences over CFG nodes.

    For every edge ``a -> b`` the nodes on the postdominator-tree path from
    ``b`` up to (not including) ``ipdom(a)`` depend on ``a``.  Entry is
    treated as a predicate whose other branch goes straight to Exit, so
    top-level statements depend on Entry.  Loop predicates depend on
    themselves.
    """
    out = set()
    for a, b, tag in cfg.edges:
        stop = EXIT if a == ENTRY else pdt.ipdom[a]
        runner = b
        while runner != stop and runner != EXIT:
            out.add(ControlEdge(a, runner, tag))
            runner = pdt.ipdom[runner]
    return frozenset(out)
