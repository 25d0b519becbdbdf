"""Dynamic and simultaneous dynamic slicing over execution traces."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable

from ..criteria import (
    DynamicCriterion,
    SimultaneousCriterion,
    Slice,
    Technique,
    check_statement,
    check_variables,
)
from ..errors import InvalidCriterion, MiniJRuntimeError, OccurrenceNotFound, StatementNeverExecuted
from ..lang import Program, ancestors, project
from ..static import static_slice
from .interpreter import Trace, cell_var, execute


def step_closure(trace: Trace, seeds: Iterable[int]) -> set[int]:
    """Steps reachable backwards over dynamic data and control edges."""
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        s = trace.steps[queue.popleft()]
        parents = s.data_parents
        if s.control is not None:
            parents.add(s.control)
        for q in parents - seen:
            seen.add(q)
            queue.append(q)
    return seen


def last_definitions(trace: Trace, before: int, var: str) -> set[int]:
    """Steps, prior to step ``before``, that last wrote each cell of ``var``."""
    latest = {}
    for s in trace.steps[:before]:
        for c in s.defs:
            if cell_var(c) == var:
                latest[c] = s.index
    return set(latest.values())


def criterion_seeds(trace: Trace, step_index: int, variables: frozenset[str]) -> set[int]:
    step = trace.steps[step_index]
    seeds = set()
    referenced = step.variables
    if referenced & variables:
        seeds.add(step_index)
    elif step.control is not None:
        seeds.add(step.control)
    for v in sorted(variables - referenced):
        seeds |= last_definitions(trace, step_index, v)
    return seeds


def _close_labels(p: Program, labels: set[int]) -> set[int]:
    out = set(labels) | set(p.decl_labels)
    for l in labels:
        out.update(ancestors(p, l))
    return out


def _slice_at(p: Program, trace: Trace, step_index: int, variables) -> set[int]:
    steps = step_closure(trace, criterion_seeds(trace, step_index, variables))
    labels = {trace.steps[i].label for i in steps}
    labels.add(trace.steps[step_index].label)
    return _close_labels(p, labels)


def _grow(p: Program, trace: Trace, labels: set[int], statement: int, variables, upto=None):
    """One round of closure from every occurrence of every label in ``labels``.

    Occurrences of the criterion statement are seeded like the criterion
    itself; only steps before ``upto`` (inclusive) are considered.
    """
    steps = trace.steps if upto is None else trace.steps[: upto + 1]
    seeds = set()
    for s in steps:
        if s.label == statement and s.part == "main":
            seeds |= criterion_seeds(trace, s.index, variables)
        elif s.label in labels:
            seeds.add(s.index)
    return _close_labels(p, labels | {trace.steps[i].label for i in step_closure(trace, seeds)})


def dynamic_slice(p: Program, c: DynamicCriterion, **run) -> Slice:
    """Statements that affected ``c.variables`` at one occurrence of one run.

    The backward closure from the criterion step is widened until it also
    covers every earlier occurrence of each kept statement, so that the
    projection replays the run up to the criterion occurrence.  Extra keyword arguments (``initial``, ``step_limit``) go to :func:`execute`.
    """
    check_statement(p, c.occurrence.statement)
    check_variables(p, c.variables)
    trace = execute(p, c.input, **run)
    step = trace.find(c.occurrence.statement, c.occurrence.index)
    if step is None:
        raise OccurrenceNotFound(
            f"statement {c.occurrence.statement} executes fewer than "
            f"{c.occurrence.index} time(s) on this input"
        )
    labels = _slice_at(p, trace, step.index, c.variables)
    # every earlier occurrence of a kept statement must behave as before,
    # otherwise the projection can diverge (e.g. a loop losing its update)
    while True:
        grown = _grow(p, trace, labels, c.occurrence.statement, c.variables, upto=step.index)
        if grown == labels:
            break
        labels = grown
    return Slice(
        tuple(labels), Technique.DYNAMIC, c, project(p, labels), p,
        exhausted_reads=trace.exhausted_reads,
    )


def _observations(p: Program, c: SimultaneousCriterion, inp, run) -> tuple | None:
    try:
        return execute(p, inp, watch=(c.statement, c.variables), **run).observations
    except MiniJRuntimeError:
        return None


def simultaneous_dynamic_slice(p: Program, c: SimultaneousCriterion, **run) -> Slice:
    """One slice that is correct for every input in ``c.inputs`` at once.

    Starts from the union of the per-input dynamic slices at the last
    occurrence of the statement, then repeatedly adds the dynamic
    closure of every occurrence of every statement already in the set,
    in every trace (occurrences of the criterion statement itself are
    seeded the way a single dynamic slice would seed them).  The fixpoint
    is checked by re-executing the projection; if any observation
    sequence differs the static slice is returned instead with
    ``fell_back`` set.
    """
    check_statement(p, c.statement)
    check_variables(p, c.variables)
    if not c.inputs:
        raise InvalidCriterion("simultaneous slicing needs at least one input")
    traces = [execute(p, inp, **run) for inp in c.inputs]
    labels: set[int] = set()
    for k, trace in enumerate(traces):
        occ = trace.occurrences(c.statement)
        if not occ:
            raise StatementNeverExecuted(c.statement, k)
        labels |= _slice_at(p, trace, occ[-1].index, c.variables)

    while True:
        grown = set(labels)
        for trace in traces:
            grown |= _grow(p, trace, labels, c.statement, c.variables)
        if grown == labels:
            break
        labels = grown

    exhausted = max(t.exhausted_reads for t in traces)
    projected = project(p, labels)
    sound = all(
        _observations(projected, c, inp, run) == _observations(p, c, inp, run)
        for inp in c.inputs
    )
    if not sound:
        fallback = static_slice(p, c.statement, c.variables)
        return Slice(
            fallback.labels, Technique.SIMULTANEOUS, c, fallback.projected, p,
            fell_back=True, exhausted_reads=exhausted,
        )
    return Slice(
        tuple(labels), Technique.SIMULTANEOUS, c, projected, p, exhausted_reads=exhausted
    )

