"""Deterministic pretty-printer for MiniJ programs."""

from __future__ import annotations

from .nodes import (
    Assign,
    Binary,
    Const,
    Decl,
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
)

INDENT = "    "

_PREC = {
    "||": 1,
    "&&": 2,
    "==": 3,
    "!=": 3,
    "<": 4,
    "<=": 4,
    ">": 4,
    ">=": 4,
    "+": 5,
    "-": 5,
    "*": 6,
    "/": 6,
    "mod": 6,
}
_UNARY = 7
_ATOM = 8


def _prec(e) -> int:
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary) or (isinstance(e, IncDec) and e.prefix):
        return _UNARY
    if isinstance(e, Const) and e.value < 0:
        return _UNARY
    return _ATOM


def expr_text(e, min_prec: int = 0) -> str:
    if isinstance(e, Const):
        text = str(e.value)
    elif isinstance(e, Var):
        text = e.name
    elif isinstance(e, Index):
        text = f"{e.name}[{expr_text(e.index)}]"
    elif isinstance(e, Unary):
        inner = expr_text(e.operand, _UNARY)
        if e.op == "-" and inner.startswith("-"):
            inner = f"({inner})"
        text = e.op + inner
    elif isinstance(e, Binary):
        p = _PREC[e.op]
        text = f"{expr_text(e.left, p)} {e.op} {expr_text(e.right, p + 1)}"
    elif isinstance(e, IncDec):
        target = expr_text(e.target)
        text = f"{e.op}{target}" if e.prefix else f"{target}{e.op}"
    else:
        raise TypeError(f"not an expression: {e!r}")
    if _prec(e) < min_prec:
        return f"({text})"
    return text


def assign_text(a: Assign) -> str:
    """Assignment without the trailing semicolon."""
    targets = [expr_text(t) for t in a.targets]
    if a.op in ("++", "--"):
        return f"{targets[0]}{a.op}"
    return " = ".join(targets[:-1] + [f"{targets[-1]} {a.op} {expr_text(a.value)}"])


def for_header(s: For) -> str:
    init = ", ".join(assign_text(a) for a in s.init)
    update = ", ".join(assign_text(a) for a in s.update)
    return f"for ({init}; {expr_text(s.cond)}; {update})"


def statement_text(s) -> str:
    """One-line rendering of a labeled node (compound statements show their header)."""
    if isinstance(s, Decl):
        items = ", ".join(
            i.name if i.size is None else f"{i.name}[{i.size}]" for i in s.items
        )
        return f"int {items};"
    if isinstance(s, Assign):
        return assign_text(s) + ";"
    if isinstance(s, Read):
        return f"{expr_text(s.target)} = read();"
    if isinstance(s, Print):
        return f"print({expr_text(s.value)});"
    if isinstance(s, If):
        return f"if ({expr_text(s.cond)})"
    if isinstance(s, While):
        return f"while ({expr_text(s.cond)})"
    if isinstance(s, For):
        return for_header(s)
    raise TypeError(f"not a statement: {s!r}")


def _block_lines(head: str, body, depth: int) -> list[str]:
    pad = INDENT * depth
    if not body:
        return [f"{pad}{head} {{ }}"]
    lines = [f"{pad}{head} {{"]
    for s in body:
        lines.extend(_stmt_lines(s, depth + 1))
    lines.append(f"{pad}}}")
    return lines


def _stmt_lines(s, depth: int) -> list[str]:
    if isinstance(s, If):
        lines = _block_lines(statement_text(s), s.then, depth)
        if s.orelse is None:
            return lines
        if len(s.orelse) == 1 and isinstance(s.orelse[0], If):
            nested = _stmt_lines(s.orelse[0], depth)
            lines[-1] += " else " + nested[0].lstrip()
            return lines + nested[1:]
        rest = _block_lines("else", s.orelse, depth)
        lines[-1] += " " + rest[0].lstrip()
        return lines + rest[1:]
    if isinstance(s, (While, For)):
        return _block_lines(statement_text(s), s.body, depth)
    return [INDENT * depth + statement_text(s)]


def unparse(program: Program) -> str:
    lines = [statement_text(d) for d in program.decls]
    for s in program.body:
        lines.extend(_stmt_lines(s, 0))
    return "\n".join(lines) + "\n"
