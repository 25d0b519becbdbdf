"""Definitions, uses and reaching definitions.

Arrays are handled at whole-array granularity: ``a[i] = e`` defines
``a`` weakly (it kills nothing) and any element read uses ``a``.  Input
is modelled by the pseudo-variable :data:`INPUT`: every ``read()`` both
uses and defines it, which chains reads together so that a projection
always consumes its input in the same order as the original program.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..lang import Assign, Decl, For, If, Index, Print, Read, While, expr_vars
from ..lang.nodes import lvalue_index_vars
from .cfg import Cfg, Node, node_label

INPUT = "<input>"


@dataclass(frozen=True)
class Action:
    """One atomic effect: read ``uses``, then write ``defs``.

    ``defs`` holds ``(variable, strong)`` pairs; a weak definition
    (array element) does not kill earlier ones.
    """

    uses: frozenset[str]
    defs: tuple[tuple[str, bool], ...]


def _assign_action(a: Assign) -> Action:
    uses = set(expr_vars(a.value))
    defs = []
    for t in a.targets:
        uses |= lvalue_index_vars(t)
        if a.op != "=":
            uses |= expr_vars(t)
        defs.append((t.name, not isinstance(t, Index)))
    return Action(frozenset(uses), tuple(defs))


def actions(cfg: Cfg, node: Node) -> tuple[Action, ...]:
    payload = cfg.payload(node)
    if payload is None or isinstance(payload, Decl):
        return ()
    if isinstance(payload, tuple):
        return tuple(_assign_action(a) for a in payload)
    if isinstance(payload, Assign):
        return (_assign_action(payload),)
    if isinstance(payload, Read):
        t = payload.target
        uses = lvalue_index_vars(t) | {INPUT}
        return (Action(frozenset(uses), ((t.name, not isinstance(t, Index)), (INPUT, True))),)
    if isinstance(payload, Print):
        return (Action(frozenset(expr_vars(payload.value)), ()),)
    if isinstance(payload, (If, While, For)):
        return (Action(frozenset(expr_vars(payload.cond)), ()),)
    raise TypeError(f"unexpected CFG payload {payload!r}")


@dataclass(frozen=True)
class DefUse:
    """Per-label definitions and uses, plus the per-node action sequences."""

    defs: dict[int, frozenset[str]]
    uses: dict[int, frozenset[str]]
    node_actions: dict

    def referenced(self, label: int) -> frozenset[str]:
        return self.defs[label] | self.uses[label]


def def_use(cfg: Cfg) -> DefUse:
    defs: dict[int, set] = {}
    uses: dict[int, set] = {}
    node_actions = {}
    for n in cfg.nodes:
        label = node_label(n)
        if label is None:
            continue
        acts = actions(cfg, n)
        node_actions[n] = acts
        d = defs.setdefault(label, set())
        u = uses.setdefault(label, set())
        for act in acts:
            u |= act.uses
            d |= {v for v, _ in act.defs}
    return DefUse(
        {k: frozenset(v) for k, v in defs.items()},
        {k: frozenset(v) for k, v in uses.items()},
        node_actions,
    )


Definition = tuple[str, int]  # (variable, defining label)


@dataclass(frozen=True)
class ReachingDefinitions:
    in_sets: dict
    out_sets: dict

    def reaching(self, node: Node, var: str) -> set[int]:
        return {d for v, d in self.in_sets[node] if v == var}


def _transfer(acts, label, facts: frozenset) -> frozenset:
    out = set(facts)
    for act in acts:
        for v, strong in act.defs:
            if strong:
                out = {f for f in out if f[0] != v}
            out.add((v, label))
    return frozenset(out)


def reaching_definitions(cfg: Cfg, du: DefUse) -> ReachingDefinitions:
    """Least fixpoint of the forward gen/kill equations.

    Nodes are visited round-robin in CFG (source) order until a full pass
    changes nothing, which makes the result and the iteration
    deterministic.
    """
    empty: frozenset = frozenset()
    ins = {n: empty for n in cfg.nodes}
    outs = {n: empty for n in cfg.nodes}
    changed = True
    while changed:
        changed = False
        for n in cfg.nodes:
            new_in = frozenset().union(*(outs[p] for p, _ in cfg.predecessors(n)))
            label = node_label(n)
            new_out = _transfer(du.node_actions.get(n, ()), label, new_in)
            if new_in != ins[n] or new_out != outs[n]:
                ins[n], outs[n] = new_in, new_out
                changed = True
    return ReachingDefinitions(ins, outs)


def data_dependences(cfg: Cfg, du: DefUse, rd: ReachingDefinitions) -> set[tuple[int, int, str]]:
    """``(def_label, use_label, var)`` triples: a definition reaching a use."""
    out = set()
    for n in cfg.nodes:
        label = node_label(n)
        if label is None:
            continue
        current = rd.in_sets[n]
        for act in du.node_actions[n]:
            for v, d in current:
                if v in act.uses:
                    out.add((d, label, v))
            current = _transfer((act,), label, current)
    return out
