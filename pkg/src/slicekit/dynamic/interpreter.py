"""An instrumented MiniJ interpreter.

Every executed statement (and every ``for`` header part) becomes a
:class:`Step` recording the concrete cells it read and wrote, the step
that last wrote each of those cells, and the predicate step that
governed it.  Those links are the dynamic dependence graph.
"""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Union

from ..criteria import InputStream, as_input
from ..dependence.dataflow import INPUT
from ..errors import DivisionByZero, IndexOutOfBounds, MiniJRuntimeError, StepLimitExceeded
from ..lang.arith import apply_binary
from ..lang import Assign, Binary, Const, For, If, Index, Print, Program, Read, Unary, Var, While

DEFAULT_STEP_LIMIT = 1_000_000

# A memory cell: a scalar name, an array element ``(name, index)``, or INPUT.
Cell = Union[str, tuple[str, int]]


def cell_var(cell: Cell) -> str:
    return cell[0] if isinstance(cell, tuple) else cell


def step_limit_default() -> int:
    value = os.environ.get("SLICEKIT_STEP_LIMIT")
    return int(value) if value else DEFAULT_STEP_LIMIT


@dataclass(frozen=True)
class Step:
    """One executed statement instance.

    ``part`` is ``"main"`` for ordinary statements and predicate
    evaluations, ``"init"``/``"update"`` for ``for`` header lists.
    ``occurrence`` counts executions of the same ``(label, part)`` from 1.
    ``deps`` pairs each used cell with the index of the step that last
    wrote it (``None`` when the cell was never written: its initial value).
    """

    index: int
    label: int
    part: str
    occurrence: int
    uses: tuple[Cell, ...]
    defs: tuple[Cell, ...]
    deps: tuple[tuple[Cell, int | None], ...]
    control: int | None
    value: int | None = None
    outcome: bool | None = None

    @property
    def variables(self) -> frozenset[str]:
        """Variables (not cells) referenced by the step."""
        return frozenset(cell_var(c) for c in self.uses + self.defs) - {INPUT}

    @property
    def data_parents(self) -> set[int]:
        return {d for _, d in self.deps if d is not None}


@dataclass(frozen=True)
class Trace:
    steps: tuple[Step, ...]
    outputs: tuple[int, ...]
    consumed: int
    exhausted_reads: int
    final: Mapping = field(repr=False)
    observations: tuple = ()

    def occurrences(self, label: int, part: str = "main") -> list[Step]:
        return [s for s in self.steps if s.label == label and s.part == part]

    def find(self, label: int, k: int) -> Step | None:
        seen = 0
        for s in self.steps:
            if s.label == label and s.part == "main":
                seen += 1
                if seen == k:
                    return s
        return None

    @property
    def executed(self) -> frozenset[int]:
        return frozenset(s.label for s in self.steps)


class _Machine:
    def __init__(self, program, inputs, limit, initial, watch, overrides):
        self.program = program
        self.inputs = inputs.values
        self.limit = limit
        self.watch = watch
        self.overrides = dict(overrides or {})
        self.sizes = {n: item.size for n, item in program.declared().items()}
        self.memory: dict[Cell, int] = {}
        for name, value in (initial or {}).items():
            if self.sizes.get(name) is not None:
                for i, x in enumerate(value):
                    self.memory[(name, i)] = int(x)
            else:
                self.memory[name] = int(value)
        self.writer: dict[Cell, int] = {}
        self.steps: list[Step] = []
        self.counts: dict[tuple[int, str], int] = {}
        self.outputs: list[int] = []
        self.consumed = 0
        self.exhausted = 0
        self.observations: list = []

    # -- expression evaluation --------------------------------------------

    def cell(self, t, uses) -> Cell:
        if isinstance(t, Var):
            return t.name
        i = self.eval(t.index, uses)
        size = self.sizes[t.name]
        if not 0 <= i < size:
            raise IndexOutOfBounds(f"index {i} outside {t.name}[{size}]", self.current)
        return (t.name, i)

    def load(self, cell, uses) -> int:
        uses.append(cell)
        return self.memory.get(cell, 0)

    def eval(self, e, uses) -> int:
        if isinstance(e, Const):
            return e.value
        if isinstance(e, (Var, Index)):
            return self.load(self.cell(e, uses), uses)
        if isinstance(e, Unary):
            v = self.eval(e.operand, uses)
            return -v if e.op == "-" else int(not v)
        if isinstance(e, Binary):
            op = e.op
            left = self.eval(e.left, uses)
            if op == "&&":
                return int(bool(left) and bool(self.eval(e.right, uses)))
            if op == "||":
                return int(bool(left) or bool(self.eval(e.right, uses)))
            value = apply_binary(op, left, self.eval(e.right, uses))
            if value is None:
                raise DivisionByZero("division by zero", self.current)
            return value
        raise MiniJRuntimeError(f"cannot evaluate {e!r}")

    # -- steps ----------------------------------------------------------------

    def begin(self, label, part):
        if len(self.steps) >= self.limit:
            raise StepLimitExceeded(f"step limit of {self.limit} exceeded")
        key = (label, part)
        self.counts[key] = self.counts.get(key, 0) + 1
        self.current = (label, self.counts[key])
        return self.counts[key]

    def record(self, label, part, k, uses, defs, control, value=None, outcome=None):
        deps = tuple((c, self.writer.get(c)) for c in uses)
        idx = len(self.steps)
        self.steps.append(
            Step(idx, label, part, k, tuple(uses), tuple(defs), deps, control, value, outcome)
        )
        for c in defs:
            self.writer[c] = idx
        if part == "main" and self.watch is not None and label == self.watch[0]:
            self.observations.append(tuple(self.snapshot(v) for v in self.watch[1]))
        return idx

    def snapshot(self, name):
        size = self.sizes.get(name)
        if size is None:
            return self.memory.get(name, 0)
        return tuple(self.memory.get((name, i), 0) for i in range(size))

    def store(self, cell, value, label, part):
        var = cell_var(cell)
        forced = self.overrides.get(((label, part), var))
        if forced is not None and not isinstance(cell, tuple):
            value = forced
        self.memory[cell] = value
        return value

    def assign(self, a: Assign, label, part, control):
        k = self.begin(label, part)
        uses: list[Cell] = []
        value = self.eval(a.value, uses)
        target = self.cell(a.target, uses)
        value = self.store(target, value, label, part)
        return self.record(label, part, k, uses, [target], control, value)

    def header(self, assigns, label, part, control):
        for a in assigns:
            self.assign(a, label, part, control)

    def predicate(self, label, cond, control):
        k = self.begin(label, "main")
        uses: list[Cell] = []
        outcome = bool(self.eval(cond, uses))
        idx = self.record(label, "main", k, uses, [], control, outcome=outcome)
        return idx, outcome

    def block(self, stmts, control):
        for s in stmts:
            self.stmt(s, control)

    def stmt(self, s, control):
        L = s.label
        if isinstance(s, Assign):
            self.assign(s, L, "main", control)
        elif isinstance(s, Read):
            k = self.begin(L, "main")
            uses: list[Cell] = []
            target = self.cell(s.target, uses)
            uses.append(INPUT)
            if self.consumed < len(self.inputs):
                value = self.inputs[self.consumed]
                self.consumed += 1
            else:
                value = 0
                self.exhausted += 1
            value = self.store(target, value, L, "main")
            self.record(L, "main", k, uses, [target, INPUT], control, value)
        elif isinstance(s, Print):
            k = self.begin(L, "main")
            uses = []
            value = self.eval(s.value, uses)
            self.outputs.append(value)
            self.record(L, "main", k, uses, [], control, value)
        elif isinstance(s, If):
            idx, outcome = self.predicate(L, s.cond, control)
            self.block(s.then if outcome else (s.orelse or ()), idx)
        elif isinstance(s, While):
            idx, outcome = self.predicate(L, s.cond, control)
            while outcome:
                self.block(s.body, idx)
                idx, outcome = self.predicate(L, s.cond, idx)
        elif isinstance(s, For):
            self.header(s.init, L, "init", control)
            idx, outcome = self.predicate(L, s.cond, control)
            while outcome:
                self.block(s.body, idx)
                self.header(s.update, L, "update", idx)
                idx, outcome = self.predicate(L, s.cond, idx)
        else:
            raise MiniJRuntimeError(f"cannot execute {s!r}")

    def run(self):
        try:
            for d in self.program.decls:
                k = self.begin(d.label, "main")
                self.record(d.label, "main", k, [], [], None)
            self.block(self.program.body, None)
        except MiniJRuntimeError as exc:
            # whatever was watched before the failure stays inspectable
            exc.observations = tuple(self.observations)
            raise
        return Trace(
            tuple(self.steps),
            tuple(self.outputs),
            self.consumed,
            self.exhausted,
            dict(self.memory),
            tuple(self.observations),
        )


def execute(
    program: Program,
    inputs: InputStream | str | list[int] = (),
    *,
    step_limit: int | None = None,
    initial: Mapping[str, object] | None = None,
    watch: tuple[int, frozenset[str] | tuple[str, ...]] | None = None,
    overrides: Mapping | None = None,
) -> Trace:
    """Run a normalized program and record its full trace.

    ``initial`` supplies starting values (arrays as sequences); anything
    else starts at 0.  ``watch=(label, variables)`` records, after every
    execution of ``label``, the values of ``variables`` into
    ``Trace.observations``.  ``overrides`` maps ``(node, variable)`` to a
    value that is stored instead of the computed one whenever that node
    writes that scalar; ``node`` is a label or ``("init", label)``.
    """
    if watch is not None:
        watch = (watch[0], tuple(sorted(watch[1])))
    overrides = {
        ((n, "main") if isinstance(n, int) else (n[1], n[0]), v): int(x)
        for (n, v), x in (overrides or {}).items()
    }
    limit = step_limit if step_limit is not None else step_limit_default()
    machine = _Machine(program, as_input(inputs), limit, initial, watch, overrides)
    return machine.run()


def observe(program: Program, label: int, variables, inputs=(), **kw) -> tuple:
    """Values of ``variables`` after each execution of ``label``."""
    return execute(program, inputs, watch=(label, variables), **kw).observations

