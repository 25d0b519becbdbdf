"""Slicing criteria and the slice result type shared by all techniques."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InvalidCriterion
from .lang import Program, statement_text


class Technique(str, enum.Enum):
    STATIC = "static"
    FORWARD = "forward"
    DYNAMIC = "dynamic"
    SIMULTANEOUS = "simultaneous"
    CONDITIONED = "conditioned"
    AMORPHOUS = "amorphous"


def _vars(variables) -> frozenset[str]:
    if isinstance(variables, str):
        return frozenset([variables])
    return frozenset(variables)


@dataclass(frozen=True)
class StaticCriterion:
    """``<S, V>``: the values of ``variables`` at statement ``statement``."""

    statement: int
    variables: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "variables", _vars(self.variables))


@dataclass(frozen=True)
class InputStream:
    """Integers consumed, in order, by successive ``read()`` calls.

    ``names`` is documentation only (``"n=2"`` style annotations).
    """

    values: tuple[int, ...]
    names: tuple[str | None, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def parse(cls, text: str) -> "InputStream":
        """``"0,0,2,2,0"`` or ``"a1=0, chk=0, n=2"``; blank means no input."""
        values, names = [], []
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            name, _, value = part.rpartition("=")
            try:
                values.append(int(value))
            except ValueError:
                raise ValueError(f"not an integer input value: {part!r}") from None
            names.append(name.strip() or None)
        if not any(names):
            names = []
        return cls(tuple(values), tuple(names))

    def __len__(self) -> int:
        return len(self.values)


def as_input(x) -> InputStream:
    if isinstance(x, InputStream):
        return x
    if isinstance(x, str):
        return InputStream.parse(x)
    return InputStream(tuple(x))


@dataclass(frozen=True)
class Occurrence:
    """The ``index``-th execution (1-based) of ``statement``."""

    statement: int
    index: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise InvalidCriterion("occurrence index must be >= 1")


@dataclass(frozen=True)
class DynamicCriterion:
    input: InputStream
    occurrence: Occurrence
    variables: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "input", as_input(self.input))
        object.__setattr__(self, "variables", _vars(self.variables))


@dataclass(frozen=True)
class SimultaneousCriterion:
    inputs: tuple[InputStream, ...]
    statement: int
    variables: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(as_input(i) for i in self.inputs))
        object.__setattr__(self, "variables", _vars(self.variables))


@dataclass(frozen=True)
class ConditionedCriterion:
    """Static criterion plus variables fixed to constants at their first definition."""

    fixed: tuple[tuple[str, int], ...]
    statement: int
    variables: frozenset[str]

    def __post_init__(self):
        fixed = self.fixed
        if isinstance(fixed, Mapping):
            fixed = fixed.items()
        object.__setattr__(self, "fixed", tuple(sorted((k, int(v)) for k, v in fixed)))
        object.__setattr__(self, "variables", _vars(self.variables))

    @property
    def fixings(self) -> dict[str, int]:
        return dict(self.fixed)


@dataclass(frozen=True)
class Slice:
    """A slice: sorted label set plus the projected program.

    ``labels`` are in the numbering of ``program`` (the sliced program);
    every label is present in ``projected``, which for amorphous slices
    may also hold freshly labeled statements.
    """

    labels: tuple[int, ...]
    technique: Technique
    criterion: object
    projected: Program
    program: Program = field(compare=False, repr=False)
    fell_back: bool = False
    exhausted_reads: int = 0

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(sorted(set(self.labels))))

    def __contains__(self, label: int) -> bool:
        return label in self.labels

    @property
    def label_set(self) -> frozenset[int]:
        return frozenset(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def statement_texts(self) -> list[str]:
        return [statement_text(self.projected[l]) for l in self.labels]


def check_statement(program: Program, statement: int):
    if statement not in program.label_map:
        raise InvalidCriterion(f"no statement with label {statement}")


def check_variables(program: Program, variables: Iterable[str]):
    variables = list(variables)
    if not variables:
        raise InvalidCriterion("criterion needs at least one variable")
    declared = program.declared()
    missing = sorted(v for v in variables if v not in declared)
    if missing:
        raise InvalidCriterion(f"undeclared criterion variable(s): {', '.join(missing)}")
