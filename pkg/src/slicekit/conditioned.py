"""Conditioned (quasi-static) slicing.

Some variables are fixed to constants at their first definition.  A
sparse conditional constant propagation over the CFG then decides which
predicates are constant and therefore which statements cannot execute;
those are pruned and the remaining program is sliced statically.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .criteria import (
    ConditionedCriterion,
    Slice,
    StaticCriterion,
    Technique,
    check_statement,
    check_variables,
)
from .dependence import (
    ENTRY,
    EXIT,
    Cfg,
    Pdg,
    PdgEdge,
    build_cfg,
    build_pdg,
    data_dependences,
    def_use,
    reaching_definitions,
)
from .dependence.cfg import node_label
from .errors import ContradictoryFixing, InvalidCriterion, NoDefinition
from .lang import Assign, Binary, Const, Index, Program, Read, Unary, Var, project
from .lang.arith import apply_binary
from .static import backward_seeds

# Lattice: UNDEF (no value seen yet) above every Const above NAC.
UNDEF = "undef"
NAC = "nac"


def meet(a, b):
    if a == UNDEF:
        return b
    if b == UNDEF or a == b:
        return a
    return NAC


def abstract_eval(e, env: Mapping[str, object]):
    """Evaluate ``e`` over the constant lattice; array elements are NAC."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return env.get(e.name, NAC)
    if isinstance(e, Index):
        return NAC
    if isinstance(e, Unary):
        v = abstract_eval(e.operand, env)
        if v in (UNDEF, NAC):
            return v
        return -v if e.op == "-" else int(not v)
    if isinstance(e, Binary):
        x = abstract_eval(e.left, env)
        if e.op in ("&&", "||"):
            short = 0 if e.op == "&&" else 1
            if x not in (UNDEF, NAC) and bool(x) == bool(short):
                return short
            y = abstract_eval(e.right, env)
            if y not in (UNDEF, NAC) and bool(y) == bool(short):
                return short
            if UNDEF in (x, y):
                return UNDEF
            if NAC in (x, y):
                return NAC
            return int(bool(y))
        y = abstract_eval(e.right, env)
        if UNDEF in (x, y):
            return UNDEF
        if NAC in (x, y):
            return NAC
        value = apply_binary(e.op, x, y)
        return NAC if value is None else value
    raise TypeError(f"unexpected expression {e!r}")


@dataclass(frozen=True)
class ConstantFacts:
    """Result of conditional constant propagation.

    ``reachable`` holds CFG nodes that can execute and ``executable`` the
    CFG edges ``(src, dst, tag)`` that can be taken; ``decided`` maps each
    reachable predicate label whose condition is constant to its outcome;
    ``fixing_nodes`` maps each fixed variable to the node that fixes it.
    """

    reachable: frozenset
    executable: frozenset
    decided: dict[int, bool]
    in_states: dict
    fixing_nodes: dict[str, object]

    @property
    def reachable_labels(self) -> frozenset[int]:
        return frozenset(node_label(n) for n in self.reachable if node_label(n) is not None)


def _node_assigns(cfg: Cfg, node):
    payload = cfg.payload(node)
    if isinstance(payload, tuple):
        return payload
    if isinstance(payload, (Assign, Read)):
        return (payload,)
    return ()


def fixing_nodes(cfg: Cfg, fixed: Mapping[str, int]) -> dict[str, object]:
    """The first CFG node, in source order, that defines each fixed variable."""
    declared = cfg.program.declared()
    out = {}
    for v in fixed:
        if v not in declared:
            raise InvalidCriterion(f"fixed variable {v!r} is not declared")
        if declared[v].is_array:
            raise InvalidCriterion(f"cannot fix array {v!r}")
        for n in cfg.nodes:
            if any(a.target == Var(v) for a in _node_assigns(cfg, n)):
                out[v] = n
                break
        else:
            raise NoDefinition(f"fixed variable {v!r} is never defined")
    return out


def _transfer(cfg, node, env, fixes, check=False):
    env = dict(env)
    for a in _node_assigns(cfg, node):
        t = a.target
        if isinstance(t, Index):
            continue
        if isinstance(a, Read):
            value = NAC
        else:
            value = abstract_eval(a.value, env)
        if t.name in fixes:
            if check and value not in (UNDEF, NAC) and value != fixes[t.name]:
                raise ContradictoryFixing(
                    f"{t.name} is fixed to {fixes[t.name]} but its first definition "
                    f"(statement {node_label(node)}) assigns {value}"
                )
            value = fixes[t.name]
        env[t.name] = value
    return env


def propagate_constants(p: Program, fixed: Mapping[str, int], cfg: Cfg | None = None) -> ConstantFacts:
    """Sparse conditional constant propagation with the given fixings.

    Every variable is unknown on entry (inputs and initial array contents
    are arbitrary).  Iterates round-robin in source order to a fixpoint.
    """
    cfg = cfg or build_cfg(p)
    fixes_at = fixing_nodes(cfg, fixed)
    by_node: dict = {}
    for v, n in fixes_at.items():
        by_node.setdefault(n, {})[v] = fixed[v]
    names = list(p.declared())
    entry_env = {v: NAC for v in names}

    executable: set = set()
    ins: dict = {}
    outs: dict = {ENTRY: entry_env}
    for s, tag in cfg.successors(ENTRY):
        executable.add((ENTRY, s, tag))
    changed = True
    while changed:
        changed = False
        for n in cfg.nodes:
            if n == ENTRY:
                continue
            incoming = [outs[a] for a, tag in cfg.predecessors(n) if (a, n, tag) in executable and a in outs]
            if not incoming:
                continue
            env = {v: UNDEF for v in names}
            for o in incoming:
                env = {v: meet(env[v], o[v]) for v in names}
            if ins.get(n) != env or n not in outs:
                ins[n] = env
                out = _transfer(cfg, n, env, by_node.get(n, {}))
                outs[n] = out
                changed = True
            succ = cfg.successors(n)
            if cfg.is_predicate(n):
                cond = abstract_eval(cfg.payload(n).cond, ins[n])
                if cond == UNDEF:
                    succ = []
                elif cond != NAC:
                    want = "true" if cond else "false"
                    succ = [(s, tag) for s, tag in succ if tag == want]
            for s, tag in succ:
                if (n, s, tag) not in executable:
                    executable.add((n, s, tag))
                    changed = True

    for n, fixes in by_node.items():
        if n in ins:
            _transfer(cfg, n, ins[n], fixes, check=True)
    decided = {}
    for n in ins:
        if isinstance(n, int) and cfg.is_predicate(n):
            cond = abstract_eval(cfg.payload(n).cond, ins[n])
            if cond not in (UNDEF, NAC):
                decided[n] = bool(cond)
    return ConstantFacts(frozenset(ins), frozenset(executable), decided, ins, fixes_at)


def conditioned_pdg(p: Program, facts: ConstantFacts, full: Pdg | None = None) -> Pdg:
    """The PDG of ``p`` as seen by executions that satisfy the fixing.

    Nodes that cannot execute are dropped.  Data dependences are
    recomputed over the executable CFG edges only, so a definition
    reaches a use only along a path the fixing allows.  Control
    dependences stay those of the full program: a decided predicate
    still governs the branch it always takes.
    """
    full = full or build_pdg(p)
    cfg = full.cfg
    live = facts.reachable | {ENTRY, EXIT}
    sub = Cfg(
        tuple(n for n in cfg.nodes if n in live),
        tuple(e for e in cfg.edges if e in facts.executable),
        p,
    )
    du = def_use(sub)
    rd = reaching_definitions(sub, du)
    labels = facts.reachable_labels
    edges = {
        e for e in full.edges
        if e.kind == "control" and e.dst in labels and (e.src == ENTRY or e.src in labels)
    }
    edges |= {PdgEdge(d, u, "data", v) for d, u, v in data_dependences(sub, du, rd)}
    nodes = (ENTRY,) + tuple(l for l in p.labels if l in labels)
    return Pdg(nodes, frozenset(edges), p, sub, full.pdt, du, rd)


def conditioned_slice(p: Program, c: ConditionedCriterion) -> Slice:
    """Backward slice of ``p`` restricted to executions satisfying the fixing.

    Statements that cannot execute under the fixing are left out and
    only dependences along executable paths are followed; decided
    predicates themselves stay.  When a decided predicate that belongs to
    the ordinary static slice reads a fixed variable, the statement that
    fixes it is kept too (with its own backward slice), so the condition
    remains anchored in the projection.  Labels are in ``p``'s numbering.
    """
    check_statement(p, c.statement)
    check_variables(p, c.variables)
    full = build_pdg(p)
    facts = propagate_constants(p, c.fixings, full.cfg)
    decls = set(p.decl_labels)
    if c.statement not in facts.reachable_labels:
        return Slice(tuple(decls), Technique.CONDITIONED, c, project(p, decls), p)

    pdg = conditioned_pdg(p, facts, full)
    criterion = StaticCriterion(c.statement, c.variables)
    seeds = backward_seeds(pdg, criterion)
    static = full.backward_reachable(backward_seeds(full, criterion)) | {c.statement}
    for v, node in facts.fixing_nodes.items():
        fix_label = node_label(node)
        if fix_label not in facts.reachable_labels:
            continue
        for pred in facts.decided:
            if pred in static and v in full.du.uses[pred] and fix_label in full.reaching_defs(pred, v):
                seeds.add(fix_label)

    labels = pdg.backward_reachable(seeds) | {c.statement} | decls
    return Slice(tuple(labels), Technique.CONDITIONED, c, project(p, labels), p)


def fixing_overrides(p: Program, fixed: Mapping[str, int]) -> dict:
    """``execute`` overrides that impose ``fixed`` at the fixing points."""
    nodes = fixing_nodes(build_cfg(p), fixed)
    return {(n, v): fixed[v] for v, n in nodes.items()}

