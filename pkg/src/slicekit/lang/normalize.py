"""Desugaring into the core statement forms the analyses expect.

After normalization every assignment has one target and the plain ``=``
operator, no expression has side effects, and labels are consecutive.
"""

from __future__ import annotations

from .nodes import (
    Assign,
    Binary,
    Const,
    For,
    If,
    IncDec,
    Index,
    Print,
    Program,
    Read,
    Unary,
    Var,
    While,
    relabel,
)

_COMPOUND = {"+=": "+", "-=": "-", "*=": "*", "/=": "/"}
_STEP = {"++": "+", "--": "-"}


def _bump(target, op):
    return Assign((target,), Binary(_STEP[op], target, Const(1)))


def _hoist(e, pre, post):
    """Strip ``++``/``--`` from ``e``; side effects go to ``pre``/``post``."""
    if isinstance(e, IncDec):
        target = _hoist(e.target, pre, post)
        (pre if e.prefix else post).append(_bump(target, e.op))
        return target
    if isinstance(e, Index):
        return Index(e.name, _hoist(e.index, pre, post))
    if isinstance(e, Unary):
        return Unary(e.op, _hoist(e.operand, pre, post))
    if isinstance(e, Binary):
        return Binary(e.op, _hoist(e.left, pre, post), _hoist(e.right, pre, post))
    return e


def _assign(a: Assign) -> list:
    pre, post = [], []
    targets = [_hoist(t, pre, post) for t in a.targets]
    if a.op in _STEP:
        return pre + [_bump(targets[0], a.op)] + post
    value = _hoist(a.value, pre, post)
    if a.op in _COMPOUND:
        value = Binary(_COMPOUND[a.op], targets[0], value)
    # chains assign right-to-left; later targets copy the previous one
    out = []
    source = value
    for t in reversed(targets):
        out.append(Assign((t,), source))
        if not isinstance(value, Const):
            source = t
    return pre + out + post


def _stmt(s) -> list:
    if isinstance(s, Assign):
        return _assign(s)
    if isinstance(s, Read):
        pre, post = [], []
        target = _hoist(s.target, pre, post)
        return pre + [Read(target)] + post
    if isinstance(s, Print):
        pre, post = [], []
        value = _hoist(s.value, pre, post)
        return pre + [Print(value)] + post
    if isinstance(s, If):
        orelse = _block(s.orelse) if s.orelse is not None else None
        return [If(s.cond, _block(s.then), orelse)]
    if isinstance(s, While):
        return [While(s.cond, _block(s.body))]
    if isinstance(s, For):
        init = tuple(x for a in s.init for x in _assign(a))
        update = tuple(x for a in s.update for x in _assign(a))
        return [For(init, s.cond, update, _block(s.body))]
    raise TypeError(f"not a statement: {s!r}")


def _block(stmts) -> tuple:
    return tuple(x for s in stmts for x in _stmt(s))


def normalize(program: Program) -> Program:
    """Split chained and compound assignments, hoist increments, relabel.

    ``i = pprod = nprod = 1;`` becomes ``nprod = 1; pprod = 1; i = 1;``
    and ``sum = a[++i]`` becomes ``i = i + 1; sum = a[i]``.  Idempotent.
    """
    return relabel(Program(program.decls, _block(program.body)))


def is_normalized(program: Program) -> bool:
    return normalize(program) == program
