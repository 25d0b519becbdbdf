"""Shared helpers for the test suite: input generators and observers."""

from __future__ import annotations

import random

from slicekit.dynamic import execute
from slicekit.errors import MiniJRuntimeError
from slicekit.fixtures import NAMES, load_fixture
from slicekit.lang import Program

STEP_LIMIT = 200_000

FIXTURES = {name: load_fixture(name) for name in NAMES}


def random_run(name: str, rng: random.Random) -> dict:
    """Keyword arguments for ``execute`` describing one random run of a fixture."""
    if name in ("fig1", "fig3"):
        return {"inputs": [rng.randint(-2, 9)]}
    if name == "fig6":
        return {"inputs": [rng.randint(-1, 10)]}
    if name == "fig9":
        return {"inputs": [rng.randint(-3, 4) for _ in range(10)]}
    if name == "fig11":
        return {"inputs": [rng.randint(-4, 4) for _ in range(2)]}
    if name == "fig13":
        return {"inputs": [], "initial": {"a": [rng.randint(-100, 100) for _ in range(25)]}}
    raise KeyError(name)


def observe(p: Program, label: int, variables, run: dict, **extra):
    """Observation sequence of ``variables`` at ``label``, or the error type raised."""
    try:
        trace = execute(
            p, run["inputs"], initial=run.get("initial"), watch=(label, variables),
            step_limit=STEP_LIMIT, **extra,
        )
    except MiniJRuntimeError as exc:
        return type(exc).__name__
    return trace.observations


def valid_runs(name: str, count: int, seed: int = 0) -> list[dict]:
    """``count`` random runs on which the original fixture terminates normally."""
    rng = random.Random(seed)
    p = FIXTURES[name]
    runs = []
    while len(runs) < count:
        run = random_run(name, rng)
        try:
            execute(p, run["inputs"], initial=run.get("initial"), step_limit=STEP_LIMIT)
        except MiniJRuntimeError:
            continue
        runs.append(run)
    return runs


def referenced_criteria(p: Program) -> list[tuple[int, frozenset[str]]]:
    """Every ``(statement, {v})`` with ``v`` read or written at the statement."""
    from slicekit.dependence import build_pdg

    pdg = build_pdg(p)
    out = []
    for label in p.labels:
        if label in p.decl_labels:
            continue
        for v in sorted(pdg.du.referenced(label) - {"<input>"}):
            out.append((label, frozenset([v])))
    return out


def scalar_names(p: Program) -> list[str]:
    return sorted(n for n, item in p.declared().items() if not item.is_array)
