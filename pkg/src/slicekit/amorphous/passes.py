"""The six semantics-preserving rewrites used by amorphous slicing.

Each pass takes a normalized program and an optional criterion and
returns a (possibly identical) program.  With a criterion, a pass only
has to preserve the criterion variables' values after each execution
of the criterion statement; without one it must preserve every print.
"""

from __future__ import annotations

import enum
from dataclasses import replace

from ..criteria import StaticCriterion
from ..lang import (
    Assign,
    Binary,
    Const,
    For,
    If,
    Index,
    Print,
    Program,
    Read,
    Unary,
    Var,
    While,
    apply_binary,
    expr_vars,
)
from .analysis import (
    Liveness,
    assign_fresh_labels,
    contains_label,
    counted_loop,
    defined,
    map_block,
    map_expr,
    may_fail,
    stmt_uses,
    substitute,
    used,
)


class TransformPass(str, enum.Enum):
    CONSTANT_FOLD = "ConstantFold"
    COPY_PROPAGATE = "CopyPropagate"
    DEAD_CODE_ELIMINATE = "DeadCodeEliminate"
    LOOP_FINAL_VALUE = "LoopFinalValue"
    EMPTY_LOOP_REMOVAL = "EmptyLoopRemoval"
    INDEX_NORMALIZE = "IndexNormalize"


# -- ConstantFold ---------------------------------------------------------------


def _fold_node(e):
    if isinstance(e, Unary) and isinstance(e.operand, Const):
        v = e.operand.value
        return Const(-v if e.op == "-" else int(not v))
    if isinstance(e, Binary) and isinstance(e.left, Const) and isinstance(e.right, Const):
        value = apply_binary(e.op, e.left.value, e.right.value)
        return None if value is None else Const(value)
    return None


def fold(e):
    return map_expr(e, _fold_node)


def _fold_assign(a: Assign) -> Assign:
    t = a.target
    if isinstance(t, Index):
        t = Index(t.name, fold(t.index))
    return replace(a, targets=(t,), value=fold(a.value))


def constant_fold(p: Program, c: StaticCriterion | None = None) -> Program:
    """Evaluate operators whose operands are all constants."""
    def fn(s):
        if isinstance(s, Assign):
            return _fold_assign(s)
        if isinstance(s, Read) and isinstance(s.target, Index):
            return replace(s, target=Index(s.target.name, fold(s.target.index)))
        if isinstance(s, Print):
            return replace(s, value=fold(s.value))
        if isinstance(s, (If, While)):
            return replace(s, cond=fold(s.cond))
        if isinstance(s, For):
            return replace(
                s, init=tuple(map(_fold_assign, s.init)), cond=fold(s.cond),
                update=tuple(map(_fold_assign, s.update)),
            )
        return s
    return Program(p.decls, map_block(p.body, fn))


# -- CopyPropagate --------------------------------------------------------------


def _mentions(e, names) -> bool:
    if isinstance(e, Var):
        return e.name in names
    if isinstance(e, Index):
        return e.name in names or _mentions(e.index, names)
    return False


def _kill(env: dict, names) -> dict:
    return {v: e for v, e in env.items() if v not in names and not _mentions(e, names)}


def _copyable(e) -> bool:
    return isinstance(e, (Var, Const)) or (isinstance(e, Index) and isinstance(e.index, Const))


class _Copier:
    def __init__(self):
        self.env: dict = {}

    def expr(self, e):
        return substitute(e, self.env)

    def target(self, t):
        return Index(t.name, self.expr(t.index)) if isinstance(t, Index) else t

    def assign(self, a: Assign) -> Assign:
        value = self.expr(a.value)
        t = self.target(a.target)
        self.env = _kill(self.env, {t.name})
        if isinstance(t, Var) and _copyable(value) and not _mentions(value, {t.name}):
            self.env[t.name] = value
        return replace(a, targets=(t,), value=value)

    def block(self, stmts) -> tuple:
        return tuple(self.stmt(s) for s in stmts)

    def stmt(self, s):
        if isinstance(s, Assign):
            return self.assign(s)
        if isinstance(s, Read):
            t = self.target(s.target)
            self.env = _kill(self.env, {t.name})
            return replace(s, target=t)
        if isinstance(s, Print):
            return replace(s, value=self.expr(s.value))
        if isinstance(s, If):
            cond = self.expr(s.cond)
            start = self.env
            then = self.block(s.then)
            after_then, self.env = self.env, start
            orelse = self.block(s.orelse) if s.orelse is not None else None
            self.env = {v: e for v, e in self.env.items() if after_then.get(v) == e}
            return replace(s, cond=cond, then=then, orelse=orelse)
        if isinstance(s, While):
            self.env = _kill(self.env, defined(s.body))
            start = self.env
            cond = self.expr(s.cond)
            body = self.block(s.body)
            self.env = start
            return replace(s, cond=cond, body=body)
        if isinstance(s, For):
            init = tuple(self.assign(a) for a in s.init)
            self.env = _kill(self.env, defined(s.body) | {a.target.name for a in s.update})
            start = self.env
            cond = self.expr(s.cond)
            body = self.block(s.body)
            update = tuple(self.assign(a) for a in s.update)
            self.env = start
            return replace(s, init=init, cond=cond, body=body, update=update)
        return s


def copy_propagate(p: Program, c: StaticCriterion | None = None) -> Program:
    """Replace uses of ``v`` by ``w`` after ``v = w`` while both are unchanged.

    ``w`` may be a variable, a constant or a constant-index array element.
    """
    return Program(p.decls, _Copier().block(p.body))


# -- DeadCodeEliminate ------------------------------------------------------------


def _prune_header(assigns, live) -> tuple:
    kept = []
    live = set(live)
    for a in reversed(assigns):
        if a.target.name in live:
            kept.append(a)
            if not isinstance(a.target, Index):
                live.discard(a.target.name)
            live |= stmt_uses(a)
    return tuple(reversed(kept))


def dead_code_eliminate(p: Program, c: StaticCriterion | None = None) -> Program:
    """Delete assignments, reads and prints that cannot reach an observation.

    Also removes an ``if`` left with two empty branches and a condition
    that cannot fail at run time.
    """
    lv = Liveness(c)
    lv.block(p.body, set())

    def fn(s):
        out = set(lv.out.get(s.label, frozenset()))
        if isinstance(s, (Assign, Read, Print)):
            return s if lv.keeps(s, out) else None
        if isinstance(s, If):
            if not s.then and not s.orelse and not lv.is_criterion(s) and not may_fail(s.cond):
                return None
            return s
        if isinstance(s, For):
            head = lv.head(s, out)
            update = _prune_header(s.update, head)
            init = _prune_header(s.init, head)
            return replace(s, init=init, update=update)
        return s

    return Program(p.decls, map_block(p.body, fn))


# -- LoopFinalValue -------------------------------------------------------------


def _final_value_candidates(s: For, loop):
    """``(where, index, assign)`` for assignments that can move past the loop."""
    i = loop.var
    written = defined(s.body) | {a.target.name for a in s.update}
    sites = [("body", k, a) for k, a in enumerate(s.body) if isinstance(a, Assign)]
    sites += [("update", k, a) for k, a in enumerate(s.update) if k != loop.update_pos]
    for where, k, a in sites:
        v = a.target
        if not isinstance(v, Var) or v.name == i:
            continue
        rest_body = s.body[:k] + s.body[k + 1:] if where == "body" else s.body
        rest_update = [x for x in s.update if x is not a]
        if v.name in defined(rest_body) | {x.target.name for x in rest_update}:
            continue
        reads = expr_vars(s.cond) | used(rest_body) | stmt_uses(a)
        reads |= {u for x in rest_update for u in stmt_uses(x)}
        if v.name in reads:
            continue
        if (expr_vars(a.value) - {i}) & written:
            continue
        yield where, k, a


def loop_final_value(p: Program, c: StaticCriterion | None = None) -> Program:
    """Move a loop assignment ``v = E(i)`` after a counted loop as ``v = E(final i)``.

    Applies when the assignment runs unconditionally on every iteration,
    ``v`` is read nowhere else in the loop and ``E`` reads nothing the
    loop writes except the induction variable.  The loop containing the
    criterion statement is never touched.
    """
    protected = c.statement if c is not None else None

    def fn(s):
        loop = counted_loop(s)
        if loop is None or contains_label((s,), protected):
            return s
        for where, k, a in _final_value_candidates(s, loop):
            if where == "body":
                at = loop.start + (loop.trips - 1) * loop.step
                s2 = replace(s, body=s.body[:k] + s.body[k + 1:])
            else:
                after = k > loop.update_pos
                at = loop.final if after else loop.final - loop.step
                s2 = replace(s, update=s.update[:k] + s.update[k + 1:])
            if loop.trips == 0:
                return s2
            value = fold(substitute(a.value, {loop.var: Const(at)}))
            return (s2, Assign(a.targets, value))
        return s

    return assign_fresh_labels(Program(p.decls, map_block(p.body, fn)))


# -- EmptyLoopRemoval -----------------------------------------------------------


def empty_loop_removal(p: Program, c: StaticCriterion | None = None) -> Program:
    """Replace a terminating counted loop with an empty body by straight-line code.

    The loop becomes its initializations followed by the induction
    variable's final value; header updates of other variables must be
    dead after the loop.
    """
    lv = Liveness(c)
    lv.block(p.body, set())
    protected = c.statement if c is not None else None

    def fn(s):
        if not isinstance(s, For) or s.body or s.label == protected:
            return s
        loop = counted_loop(s)
        if loop is None or may_fail(s.cond):
            return s
        out = lv.out.get(s.label, frozenset())
        others = [a for k, a in enumerate(s.update) if k != loop.update_pos]
        if any(a.target.name in out for a in others):
            return s
        if loop.trips and any(may_fail(a.value) for a in others):
            return s
        return tuple(s.init) + (Assign((Var(loop.var),), Const(loop.final)),)

    return assign_fresh_labels(Program(p.decls, map_block(p.body, fn)))


# -- IndexNormalize ---------------------------------------------------------------


def _offset_uses(e, i: str, offsets: set, bare: list):
    """Collect ``k`` for each ``i + k``; note bare uses of ``i``."""
    if isinstance(e, Binary) and e.op == "+" and e.left == Var(i) and isinstance(e.right, Const):
        offsets.add(e.right.value)
        return
    if isinstance(e, Var) and e.name == i:
        bare.append(e)
        return
    if isinstance(e, Index):
        _offset_uses(e.index, i, offsets, bare)
    elif isinstance(e, Unary):
        _offset_uses(e.operand, i, offsets, bare)
    elif isinstance(e, Binary):
        _offset_uses(e.left, i, offsets, bare)
        _offset_uses(e.right, i, offsets, bare)


def _loop_exprs(stmts):
    for s in stmts:
        if isinstance(s, Assign):
            yield s.value
            if isinstance(s.target, Index):
                yield s.target.index
        elif isinstance(s, Read):
            if isinstance(s.target, Index):
                yield s.target.index
        elif isinstance(s, Print):
            yield s.value
        elif isinstance(s, (If, While)):
            yield s.cond
            yield from _loop_exprs(s.then + (s.orelse or ()) if isinstance(s, If) else s.body)
        elif isinstance(s, For):
            yield s.cond
            for a in s.init + s.update:
                yield from _loop_exprs((a,))
            yield from _loop_exprs(s.body)


def _shift(e, i: str, k: int):
    def go(x):
        if isinstance(x, Binary) and x.op == "+" and x.left == Var(i) and x.right == Const(k):
            return Var(i)
        return None
    return map_expr(e, go)


def _shift_stmt(s, i, k):
    def fix(a):
        t = a.target
        if isinstance(t, Index):
            t = Index(t.name, _shift(t.index, i, k))
        return replace(a, targets=(t,), value=_shift(a.value, i, k))

    def fn(x):
        if isinstance(x, Assign):
            return fix(x)
        if isinstance(x, Read) and isinstance(x.target, Index):
            return replace(x, target=Index(x.target.name, _shift(x.target.index, i, k)))
        if isinstance(x, Print):
            return replace(x, value=_shift(x.value, i, k))
        if isinstance(x, (If, While)):
            return replace(x, cond=_shift(x.cond, i, k))
        if isinstance(x, For):
            return replace(
                x, init=tuple(map(fix, x.init)), cond=_shift(x.cond, i, k),
                update=tuple(map(fix, x.update)),
            )
        return x

    return map_block(s, fn)


def index_normalize(p: Program, c: StaticCriterion | None = None) -> Program:
    """Shift a counted loop's induction variable so ``a[i + k]`` becomes ``a[i]``.

    Fires when every use of ``i`` inside the body (and in the other header
    updates) is ``i + k`` for one constant ``k``, and ``i`` is dead after
    the loop.  The start value and the bound move by ``k``.
    """
    lv = Liveness(c)
    lv.block(p.body, set())
    protected = c.statement if c is not None else None

    def fn(s):
        loop = counted_loop(s)
        if loop is None or contains_label((s,), protected):
            return s
        i = loop.var
        if i in lv.out.get(s.label, frozenset()):
            return s
        others = tuple(a for k, a in enumerate(s.update) if k != loop.update_pos)
        offsets: set = set()
        bare: list = []
        for e in _loop_exprs(s.body + others):
            _offset_uses(e, i, offsets, bare)
        if bare or len(offsets) != 1:
            return s
        (k,) = offsets
        if k == 0:
            return s
        starts = [n for n, a in enumerate(s.init) if a.target == Var(i)]
        last = starts[-1]
        if any(i in stmt_uses(a) for a in s.init[last + 1:]):
            return s
        init = list(s.init)
        init[last] = Assign((Var(i),), Const(loop.start + k))
        cond = replace(s.cond, right=Const(s.cond.right.value + k))
        body = _shift_stmt(s.body, i, k)
        update = _shift_stmt(s.update, i, k)
        update = tuple(update[:loop.update_pos]) + (s.update[loop.update_pos],) + tuple(update[loop.update_pos + 1:])
        return replace(s, init=tuple(init), cond=cond, body=body, update=update)

    return Program(p.decls, map_block(p.body, fn))


PASSES = {
    TransformPass.COPY_PROPAGATE: copy_propagate,
    TransformPass.CONSTANT_FOLD: constant_fold,
    TransformPass.LOOP_FINAL_VALUE: loop_final_value,
    TransformPass.DEAD_CODE_ELIMINATE: dead_code_eliminate,
    TransformPass.EMPTY_LOOP_REMOVAL: empty_loop_removal,
    TransformPass.INDEX_NORMALIZE: index_normalize,
}

PIPELINE = tuple(PASSES)


def apply_pass(which: TransformPass | str, p: Program, criterion: StaticCriterion | None = None) -> Program:
    """One application of a single pass (no-op when its pattern is absent)."""
    return PASSES[TransformPass(which)](p, criterion)
