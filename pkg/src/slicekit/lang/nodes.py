"""MiniJ abstract syntax.

Every node is an immutable dataclass, so programs can be compared
structurally, hashed and shared freely.  Statements carry an integer
``label``; ``0`` means "not yet labeled" (fresh nodes built by a rewrite).
Assignments that live inside a ``for`` header are never labeled on their
own: they belong to the header's label.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Union

# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Index:
    name: str
    index: "Expr"


@dataclass(frozen=True)
class Unary:
    op: str  # '-' or '!'
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class IncDec:
    """``++x``, ``x++``, ``--x`` or ``x--`` used as an expression.

    Only the parser produces these; normalization hoists them into
    separate assignments.
    """

    op: str  # '++' or '--'
    target: "LValue"
    prefix: bool


Expr = Union[Const, Var, Index, Unary, Binary, IncDec]
LValue = Union[Var, Index]

ARITHMETIC_OPS = ("+", "-", "*", "/", "mod")
RELATIONAL_OPS = ("<", "<=", ">", ">=", "==", "!=")
LOGICAL_OPS = ("&&", "||")

# -- statements --------------------------------------------------------------


@dataclass(frozen=True)
class DeclItem:
    name: str
    size: int | None = None  # None for scalars

    @property
    def is_array(self) -> bool:
        return self.size is not None


@dataclass(frozen=True)
class Decl:
    items: tuple[DeclItem, ...]
    label: int = 0


@dataclass(frozen=True)
class Assign:
    """``t1 = t2 = ... = value`` or a compound/increment form.

    ``op`` is one of ``= += -= *= /= ++ --``; for ``++``/``--`` the value
    is ``None``.  Chained targets are only legal with ``=``.  A
    normalized assignment has a single target and ``op == '='``.
    """

    targets: tuple[LValue, ...]
    value: Expr | None
    op: str = "="
    label: int = 0

    @property
    def target(self) -> LValue:
        return self.targets[0]


@dataclass(frozen=True)
class Read:
    target: LValue
    label: int = 0


@dataclass(frozen=True)
class Print:
    value: Expr
    label: int = 0


@dataclass(frozen=True)
class If:
    cond: Expr
    then: tuple["Stmt", ...]
    orelse: tuple["Stmt", ...] | None = None
    label: int = 0


@dataclass(frozen=True)
class While:
    cond: Expr
    body: tuple["Stmt", ...]
    label: int = 0


@dataclass(frozen=True)
class For:
    init: tuple[Assign, ...]
    cond: Expr
    update: tuple[Assign, ...]
    body: tuple["Stmt", ...]
    label: int = 0


Stmt = Union[Assign, Read, Print, If, While, For]
Labeled = Union[Decl, Assign, Read, Print, If, While, For]
COMPOUND = (If, While, For)


@dataclass(frozen=True)
class Program:
    decls: tuple[Decl, ...]
    body: tuple[Stmt, ...]
    label_map: dict[int, Labeled] = field(
        init=False, compare=False, repr=False, hash=False
    )

    def __post_init__(self):
        object.__setattr__(
            self, "label_map", {n.label: n for n in iter_labeled(self) if n.label}
        )

    @property
    def labels(self) -> list[int]:
        return sorted(self.label_map)

    @property
    def decl_labels(self) -> list[int]:
        return [d.label for d in self.decls]

    def declared(self) -> dict[str, DeclItem]:
        return {item.name: item for d in self.decls for item in d.items}

    def __getitem__(self, label: int) -> Labeled:
        return self.label_map[label]


# -- traversal helpers -------------------------------------------------------


def children(stmt: Stmt) -> Iterator[Stmt]:
    """Direct sub-statements of a compound statement, in source order."""
    if isinstance(stmt, If):
        yield from stmt.then
        if stmt.orelse:
            yield from stmt.orelse
    elif isinstance(stmt, (While, For)):
        yield from stmt.body


def walk(stmts) -> Iterator[Stmt]:
    """Pre-order walk over a statement sequence."""
    for s in stmts:
        yield s
        yield from walk(children(s))


def iter_labeled(program: Program) -> Iterator[Labeled]:
    yield from program.decls
    yield from walk(program.body)


def parents(program: Program) -> dict[int, int | None]:
    """Map each statement label to the label of its enclosing compound."""
    result: dict[int, int | None] = {d.label: None for d in program.decls}

    def visit(stmts, parent):
        for s in stmts:
            result[s.label] = parent
            visit(children(s), s.label)

    visit(program.body, None)
    return result


def ancestors(program: Program, label: int) -> list[int]:
    up = parents(program)
    out = []
    p = up.get(label)
    while p is not None:
        out.append(p)
        p = up[p]
    return out


def expr_vars(e: Expr | None) -> set[str]:
    """Names read by an expression (array accesses contribute the array)."""
    out: set[str] = set()

    def go(x):
        if isinstance(x, Var):
            out.add(x.name)
        elif isinstance(x, Index):
            out.add(x.name)
            go(x.index)
        elif isinstance(x, Unary):
            go(x.operand)
        elif isinstance(x, Binary):
            go(x.left)
            go(x.right)
        elif isinstance(x, IncDec):
            go(x.target)

    if e is not None:
        go(e)
    return out


def lvalue_index_vars(t: LValue) -> set[str]:
    return expr_vars(t.index) if isinstance(t, Index) else set()


def sub_exprs(e: Expr) -> Iterator[Expr]:
    yield e
    if isinstance(e, Index):
        yield from sub_exprs(e.index)
    elif isinstance(e, Unary):
        yield from sub_exprs(e.operand)
    elif isinstance(e, Binary):
        yield from sub_exprs(e.left)
        yield from sub_exprs(e.right)
    elif isinstance(e, IncDec):
        yield from sub_exprs(e.target)


def relabel(program: Program, start: int = 1) -> Program:
    """Return ``program`` with labels renumbered consecutively in source order."""
    counter = iter(range(start, 1 << 30))

    def stmts(seq):
        return tuple(stmt(s) for s in seq)

    def stmt(s):
        label = next(counter)
        if isinstance(s, If):
            then = stmts(s.then)
            orelse = stmts(s.orelse) if s.orelse is not None else None
            return If(s.cond, then, orelse, label)
        if isinstance(s, While):
            return While(s.cond, stmts(s.body), label)
        if isinstance(s, For):
            return For(s.init, s.cond, s.update, stmts(s.body), label)
        return replace(s, label=label)

    decls = tuple(replace(d, label=next(counter)) for d in program.decls)
    return Program(decls, stmts(program.body))
