"""Statement deletion: the syntax-preserving half of every slicer."""

from __future__ import annotations

from collections.abc import Iterable

from ..errors import UnknownLabel
from .nodes import For, If, Program, While


def project(program: Program, keep: Iterable[int]) -> Program:
    """Delete every labeled statement whose label is not in ``keep``.

    Declarations always survive.  A compound statement whose label is
    dropped takes its whole body with it; one whose label is kept keeps
    its braces even if the body ends up empty.  Surviving statements keep
    their original labels, so the result can be compared against the
    source program label-for-label; use :func:`relabel` for a fresh
    numbering.
    """
    keep = set(keep)
    unknown = keep - set(program.label_map)
    if unknown:
        raise UnknownLabel(unknown)

    def block(stmts):
        return tuple(x for x in (stmt(s) for s in stmts) if x is not None)

    def stmt(s):
        if s.label not in keep:
            return None
        if isinstance(s, If):
            orelse = block(s.orelse) if s.orelse is not None else None
            if s.orelse and not orelse:
                orelse = None
            return If(s.cond, block(s.then), orelse, s.label)
        if isinstance(s, While):
            return While(s.cond, block(s.body), s.label)
        if isinstance(s, For):
            return For(s.init, s.cond, s.update, block(s.body), s.label)
        return s

    return Program(program.decls, block(program.body))
