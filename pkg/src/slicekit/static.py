"""Backward and forward static slicing as PDG reachability."""

from __future__ import annotations

from .criteria import Slice, StaticCriterion, Technique, check_statement, check_variables
from .dependence import ENTRY, Pdg, build_pdg
from .lang import Program, ancestors, project


def _validate(p: Program, c: StaticCriterion):
    check_statement(p, c.statement)
    check_variables(p, c.variables)


def governing_predicates(pdg: Pdg, label: int) -> set[int]:
    """Predicates ``label`` is control dependent on (a loop includes itself)."""
    return {
        e.src
        for e in pdg.edges
        if e.kind == "control" and e.dst == label and e.src != ENTRY
    }


def backward_seeds(pdg: Pdg, c: StaticCriterion) -> set[int]:
    """Where the backward traversal starts.

    The criterion statement itself when it mentions a criterion variable,
    otherwise its governing predicates (so the statement still executes
    as often as in the original; a loop predicate governs itself), plus
    every definition of a criterion
    variable that reaches the statement.
    """
    seeds = set()
    if pdg.du.referenced(c.statement) & c.variables:
        seeds.add(c.statement)
    else:
        seeds |= governing_predicates(pdg, c.statement)
    for v in sorted(c.variables):
        seeds |= pdg.reaching_defs(c.statement, v)
    return seeds


def backward_slice(pdg: Pdg, p: Program, c: StaticCriterion) -> Slice:
    """Statements that may affect the values of ``c.variables`` at ``c.statement``."""
    _validate(p, c)
    labels = pdg.backward_reachable(backward_seeds(pdg, c))
    labels |= {c.statement, *p.decl_labels}
    return Slice(tuple(labels), Technique.STATIC, c, project(p, labels), p)


def forward_slice(pdg: Pdg, p: Program, c: StaticCriterion) -> Slice:
    """Statements affected by the values of ``c.variables`` at ``c.statement``.

    ``labels`` is exactly the forward-reachable set.  The projection also
    keeps declarations and the enclosing predicates of every member so
    that it remains a well-formed program.
    """
    _validate(p, c)
    if pdg.du.referenced(c.statement) & c.variables:
        seeds = {c.statement}
    else:
        seeds = {
            l for l in p.labels
            if l <= c.statement and pdg.du.defs.get(l, frozenset()) & c.variables
        }
    labels = pdg.forward_reachable(seeds)
    closed = set(labels) | set(p.decl_labels)
    for l in labels:
        closed.update(ancestors(p, l))
    return Slice(tuple(labels), Technique.FORWARD, c, project(p, closed), p)


def static_slice(p: Program, statement: int, variables, direction: str = "backward") -> Slice:
    """Convenience wrapper that builds the PDG itself."""
    c = StaticCriterion(statement, variables)
    pdg = build_pdg(p)
    if direction == "forward":
        return forward_slice(pdg, p, c)
    return backward_slice(pdg, p, c)
