"""Amorphous slicing: a static slice simplified by rewriting to a fixpoint."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..criteria import Slice, StaticCriterion, Technique
from ..lang import Program
from ..static import static_slice
from .passes import PIPELINE, TransformPass, apply_pass


@dataclass(frozen=True)
class PipelineResult:
    program: Program
    rounds: int
    fired: tuple[tuple[int, str], ...]  # (round, pass name) for each firing


def run_pipeline(
    p: Program,
    criterion: StaticCriterion | None = None,
    order: Sequence[TransformPass] = PIPELINE,
    max_rounds: int | None = None,
) -> PipelineResult:
    """Apply ``order`` repeatedly until a whole round leaves ``p`` unchanged."""
    limit = max_rounds if max_rounds is not None else max(1, len(p.labels)) * len(order) + 1
    fired = []
    rounds = 0
    while rounds < limit:
        rounds += 1
        changed = False
        for which in order:
            q = apply_pass(which, p, criterion)
            if q != p:
                fired.append((rounds, TransformPass(which).value))
                p, changed = q, True
        if not changed:
            break
    return PipelineResult(p, rounds, tuple(fired))


def amorphous_slice(
    p: Program, c: StaticCriterion, order: Sequence[TransformPass] = PIPELINE
) -> Slice:
    """Static backward slice of ``c``, then the rewrite pipeline to a fixpoint.

    Statements that survive keep their labels; statements the passes
    synthesize get fresh labels above the program's maximum.
    """
    base = static_slice(p, c.statement, c.variables)
    result = run_pipeline(base.projected, c, order).program
    return Slice(tuple(result.labels), Technique.AMORPHOUS, c, result, p)
