"""Slice-based functional cohesion: tightness, coverage and overlap."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .criteria import StaticCriterion
from .dependence import Pdg, build_pdg
from .errors import InvalidVariable, NoDefinition
from .lang import Program
from .static import backward_slice


@dataclass(frozen=True)
class CohesionReport:
    """Exact cohesion metrics for a set of output variables.

    ``slices`` maps each output variable to the label set of its slice;
    ``length`` counts every labeled statement, declarations included.
    """

    length: int
    slices: dict[str, frozenset[int]]
    intersection: frozenset[int]
    tightness: Fraction
    coverage: Fraction
    overlap: Fraction

    @property
    def slice_sizes(self) -> dict[str, int]:
        return {v: len(s) for v, s in self.slices.items()}

    def as_dict(self) -> dict:
        return {
            "length": self.length,
            "slice_sizes": self.slice_sizes,
            "intersection": sorted(self.intersection),
            "tightness": str(self.tightness),
            "coverage": str(self.coverage),
            "overlap": str(self.overlap),
        }


def slicing_point(pdg: Pdg, var: str) -> int:
    """The last statement (in label order) that reads or writes ``var``."""
    if not any(var in d for d in pdg.du.defs.values()):
        raise NoDefinition(f"output variable {var!r} is never defined")
    return max(l for l in pdg.program.labels if var in pdg.du.referenced(l))


def cohesion(p: Program, outputs: Iterable[str]) -> CohesionReport:
    outputs = sorted(set(outputs))
    if not outputs:
        raise InvalidVariable("cohesion needs at least one output variable")
    declared = p.declared()
    for v in outputs:
        if v not in declared:
            raise InvalidVariable(f"output variable {v!r} is not declared")
    pdg = build_pdg(p)
    slices = {
        v: backward_slice(pdg, p, StaticCriterion(slicing_point(pdg, v), {v})).label_set
        for v in outputs
    }
    length = len(p.labels)
    common = frozenset.intersection(*slices.values())
    k = len(outputs)
    return CohesionReport(
        length=length,
        slices=slices,
        intersection=common,
        tightness=Fraction(len(common), length),
        coverage=sum(Fraction(len(s), length) for s in slices.values()) / k,
        overlap=sum(Fraction(len(common), len(s)) for s in slices.values()) / k,
    )
