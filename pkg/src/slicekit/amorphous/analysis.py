"""Structured helpers shared by the transformation passes.

Everything here works directly on the syntax tree: normalized MiniJ is
fully structured, so liveness and loop shapes can be computed by
recursion instead of over a CFG.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, replace

from ..criteria import StaticCriterion
from ..dependence.dataflow import INPUT
from ..lang import Assign, Binary, Const, For, If, Index, Print, Program, Read, Unary, Var, While, expr_vars
from ..lang.nodes import children, lvalue_index_vars, sub_exprs

# -- expressions --------------------------------------------------------------


def map_expr(e, fn: Callable):
    """Bottom-up rewrite; ``fn`` returns a replacement or ``None`` to keep."""
    if isinstance(e, Index):
        e = Index(e.name, map_expr(e.index, fn))
    elif isinstance(e, Unary):
        e = Unary(e.op, map_expr(e.operand, fn))
    elif isinstance(e, Binary):
        e = Binary(e.op, map_expr(e.left, fn), map_expr(e.right, fn))
    out = fn(e)
    return e if out is None else out


def substitute(e, env: dict):
    """Replace each variable that ``env`` maps by its expression."""
    def go(x):
        if isinstance(x, Var) and x.name in env:
            return env[x.name]
        return None
    return map_expr(e, go)


def may_fail(e) -> bool:
    """True if evaluating ``e`` can raise (division or array access)."""
    return any(
        isinstance(x, Index) or (isinstance(x, Binary) and x.op in ("/", "mod"))
        for x in sub_exprs(e)
    )


def expr_size(e) -> int:
    return sum(1 for _ in sub_exprs(e))


# -- statements ---------------------------------------------------------------


def target_name(a) -> str:
    return a.target.name


def defined(stmts) -> set[str]:
    """Names (scalars and arrays) possibly written anywhere in ``stmts``."""
    out = set()
    for s in stmts:
        if isinstance(s, (Assign, Read)):
            out.add(s.target.name)
            if isinstance(s, Read):
                out.add(INPUT)
        elif isinstance(s, For):
            out |= {a.target.name for a in s.init + s.update}
        out |= defined(children(s))
    return out


def stmt_uses(s) -> set[str]:
    """Names read by ``s`` itself (compound statements: the predicate only)."""
    if isinstance(s, Assign):
        return expr_vars(s.value) | lvalue_index_vars(s.target)
    if isinstance(s, Read):
        return lvalue_index_vars(s.target) | {INPUT}
    if isinstance(s, Print):
        return expr_vars(s.value)
    if isinstance(s, For):
        return expr_vars(s.cond) | {v for a in s.init + s.update for v in stmt_uses(a)}
    if isinstance(s, (If, While)):
        return expr_vars(s.cond)
    return set()


def used(stmts) -> set[str]:
    out = set()
    for s in stmts:
        out |= stmt_uses(s)
        out |= used(children(s))
    return out


def contains_label(stmts, label: int | None) -> bool:
    if label is None:
        return False
    return any(s.label == label or contains_label(children(s), label) for s in stmts)


def map_block(stmts, fn: Callable) -> tuple:
    """Rewrite every statement of a block, innermost first.

    ``fn`` receives a statement whose children were already rewritten and
    returns a statement, a tuple of statements (spliced in place), or
    ``None`` to delete it.
    """
    out = []
    for s in stmts:
        if isinstance(s, If):
            orelse = map_block(s.orelse, fn) if s.orelse is not None else None
            s = replace(s, then=map_block(s.then, fn), orelse=orelse)
        elif isinstance(s, (While, For)):
            s = replace(s, body=map_block(s.body, fn))
        r = fn(s)
        if r is None:
            continue
        if isinstance(r, tuple):
            out.extend(r)
        else:
            out.append(r)
    return tuple(out)


def statement_count(p: Program) -> int:
    """Executable statements; every ``for`` header assignment counts as one."""
    n = 0
    for s in p.label_map.values():
        if isinstance(s, For):
            n += 1 + len(s.init) + len(s.update)
        elif s.label not in p.decl_labels:
            n += 1
    return n


def assign_fresh_labels(p: Program) -> Program:
    """Give every unlabeled (synthesized) statement a label above the maximum."""
    counter = iter(range(max(p.labels, default=0) + 1, 1 << 30))

    def fn(s):
        return replace(s, label=next(counter)) if s.label == 0 else s

    return Program(p.decls, map_block(p.body, fn))


# -- counted loops ------------------------------------------------------------

_MAX_TRIPS = 100_000


@dataclass(frozen=True)
class CountedLoop:
    """``for (...; i OP bound; ... i = i + step ...)`` with a constant trip count."""

    var: str
    start: int
    step: int
    trips: int
    update_pos: int  # index of ``i = i + step`` inside ``update``

    @property
    def final(self) -> int:
        return self.start + self.trips * self.step


_CMP = {
    "<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
}


def counted_loop(s) -> CountedLoop | None:
    if not isinstance(s, For):
        return None
    cond = s.cond
    if not (isinstance(cond, Binary) and cond.op in _CMP
            and isinstance(cond.left, Var) and isinstance(cond.right, Const)):
        return None
    i = cond.left.name
    steps = [k for k, a in enumerate(s.update) if a.target == Var(i)]
    if len(steps) != 1:
        return None
    pos = steps[0]
    inc = s.update[pos].value
    if not (isinstance(inc, Binary) and inc.op in ("+", "-") and inc.left == Var(i)
            and isinstance(inc.right, Const) and inc.right.value != 0):
        return None
    step = inc.right.value if inc.op == "+" else -inc.right.value
    starts = [a for a in s.init if a.target == Var(i)]
    if not starts or not isinstance(starts[-1].value, Const):
        return None
    if i in defined(s.body):
        return None
    start = starts[-1].value.value
    test = _CMP[cond.op]
    bound = cond.right.value
    value, trips = start, 0
    while test(value, bound):
        value += step
        trips += 1
        if trips > _MAX_TRIPS:
            return None
    return CountedLoop(i, start, step, trips, pos)


# -- liveness -----------------------------------------------------------------


class Liveness:
    """Backward structured liveness relative to a criterion.

    Only assignments whose target is live contribute their uses (strong
    liveness), so dead cycles such as ``s = s + 1`` in a loop vanish.
    With a criterion, its variables are live after the criterion
    statement and prints elsewhere are unobservable; without one every
    print is observable.  ``out`` records the live-out set per label.
    """

    def __init__(self, criterion: StaticCriterion | None):
        self.criterion = criterion
        self.out: dict[int, frozenset[str]] = {}

    def is_criterion(self, s) -> bool:
        return self.criterion is not None and s.label == self.criterion.statement

    def extra(self, s) -> set[str]:
        return set(self.criterion.variables) if self.is_criterion(s) else set()

    def keeps(self, s, out: set[str]) -> bool:
        """Whether a simple statement is needed given its live-out set."""
        if self.is_criterion(s):
            return True
        if isinstance(s, Assign):
            return s.target.name in out
        if isinstance(s, Read):
            return s.target.name in out or INPUT in out
        if isinstance(s, Print):
            return self.criterion is None
        return True

    def simple(self, s, out: set[str]) -> set[str]:
        out = out | self.extra(s)
        if s.label:
            self.out[s.label] = frozenset(out)
        if not self.keeps(s, out):
            return out
        live = set(out)
        if isinstance(s, Assign) and not isinstance(s.target, Index):
            live.discard(s.target.name)
        if isinstance(s, Read) and not isinstance(s.target, Index):
            live.discard(s.target.name)
        return live | stmt_uses(s)

    def block(self, stmts, out: set[str]) -> set[str]:
        live = set(out)
        for s in reversed(stmts):
            live = self.stmt(s, live)
        return live

    def header(self, assigns, out: set[str]) -> set[str]:
        live = set(out)
        for a in reversed(assigns):
            if a.target.name in live:
                if not isinstance(a.target, Index):
                    live.discard(a.target.name)
                live |= stmt_uses(a)
        return live

    def stmt(self, s, out: set[str]) -> set[str]:
        if not isinstance(s, (If, While, For)):
            return self.simple(s, out)
        extra = self.extra(s)
        out = out | extra
        self.out[s.label] = frozenset(out)
        cond = expr_vars(s.cond)
        if isinstance(s, If):
            then_in = self.block(s.then, out | extra)
            else_in = self.block(s.orelse or (), out | extra)
            return then_in | else_in | cond | extra
        head = out | cond
        while True:
            if isinstance(s, While):
                back = self.block(s.body, head | extra)
            else:
                back = self.block(s.body, self.header(s.update, head) | extra)
            new = head | back
            if new == head:
                break
            head = new
        if isinstance(s, While):
            return head
        return self.header(s.init, head)

    def head(self, s: For | While, out: set[str]) -> set[str]:
        """Live set at a loop's predicate given the loop's live-out set."""
        extra = self.extra(s)
        head = out | extra | expr_vars(s.cond)
        while True:
            if isinstance(s, While):
                back = self.block(s.body, head | extra)
            else:
                back = self.block(s.body, self.header(s.update, head) | extra)
            if head | back == head:
                return head
            head |= back


def live_out(p: Program, criterion: StaticCriterion | None) -> dict[int, frozenset[str]]:
    lv = Liveness(criterion)
    lv.block(p.body, set())
    return lv.out
