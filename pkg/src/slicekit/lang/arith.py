"""Integer semantics of MiniJ's binary operators."""

from __future__ import annotations


def trunc_div(a: int, b: int) -> int:
    """Quotient rounded toward zero."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def apply_binary(op: str, x: int, y: int) -> int | None:
    """Value of ``x op y``; ``None`` for division or ``mod`` by zero.

    ``&&`` and ``||`` are evaluated strictly here; callers that need
    short-circuiting handle them before calling.
    """
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op in ("/", "mod"):
        if y == 0:
            return None
        q = trunc_div(x, y)
        return q if op == "/" else x - y * q
    if op == "&&":
        return int(bool(x) and bool(y))
    if op == "||":
        return int(bool(x) or bool(y))
    return int({
        "<": x < y, "<=": x <= y, ">": x > y,
        ">=": x >= y, "==": x == y, "!=": x != y,
    }[op])
