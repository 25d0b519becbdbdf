from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicekit.conditioned import (
    NAC,
    abstract_eval,
    conditioned_slice,
    fixing_overrides,
    propagate_constants,
)
from slicekit.criteria import ConditionedCriterion
from slicekit.errors import AnalysisError, ContradictoryFixing, InvalidCriterion, NoDefinition
from slicekit.fixtures import NAMES, load_fixture
from slicekit.lang import load, parse, unparse
from slicekit.static import static_slice

from support import FIXTURES, observe, referenced_criteria, scalar_names, valid_runs


def cslice(p, fixed, statement, variables):
    return conditioned_slice(p, ConditionedCriterion(fixed, statement, variables))


@pytest.mark.parametrize(
    "n, expected",
    [
        (1, (1, 2, 3, 4, 6, 7, 14)),
        (0, (1, 2, 4, 14)),
        (-1, (1, 2, 3, 4, 10, 11, 14)),
    ],
)
def test_fig11_fixings(n, expected):
    s = cslice(load_fixture("fig11"), {"n": n}, 14, {"sum"})
    assert s.labels == expected


def test_fig12_line_nine_is_not_included():
    s = cslice(load_fixture("fig11"), {"n": 1}, 14, {"sum"})
    assert 9 not in s.labels
    assert 6 in s.labels


def test_decided_predicate_is_kept_not_folded():
    text = unparse(cslice(load_fixture("fig11"), {"n": 1}, 14, {"sum"}).projected)
    assert "if (n > 0) {\n    sum = sum + a;\n}" in text
    assert "n < 0" not in text


def test_empty_fixing_equals_static_slice():
    for name, p in FIXTURES.items():
        for statement, variables in referenced_criteria(p)[:15]:
            assert cslice(p, {}, statement, variables).labels == static_slice(p, statement, variables).labels


def test_propagation_decides_both_predicates():
    facts = propagate_constants(load_fixture("fig11"), {"n": 0})
    assert facts.decided == {6: False, 10: False}
    assert 7 not in facts.reachable_labels and 14 in facts.reachable_labels


def test_loop_carried_variables_are_not_constant():
    p = load("int i, x;\ni = 0;\nx = 5;\nwhile (i < 3) { i = i + 1; }\nif (x > 2) { print(i); }")
    facts = propagate_constants(p, {})
    assert 4 not in facts.decided
    assert facts.decided[6] is True


def test_abstract_eval_short_circuit():
    e = parse("int x, y; print(x && y);")[2].value
    assert abstract_eval(e, {"x": 0, "y": NAC}) == 0
    assert abstract_eval(e, {"x": NAC, "y": 0}) == 0
    assert abstract_eval(e, {"x": NAC, "y": 1}) is NAC


def test_unreachable_criterion_keeps_only_declarations():
    s = cslice(load_fixture("fig11"), {"n": 0}, 7, {"sum"})
    assert s.labels == (1,)


def test_contradictory_fixing():
    p = load("int x, y;\nx = 3;\ny = x;\nprint(y);")
    with pytest.raises(ContradictoryFixing):
        cslice(p, {"x": 4}, 4, {"y"})
    assert cslice(p, {"x": 3}, 4, {"y"}).labels == (1, 2, 3, 4)


def test_fixing_errors():
    p = load_fixture("fig11")
    with pytest.raises(InvalidCriterion):
        cslice(p, {"zz": 1}, 14, {"sum"})
    with pytest.raises(NoDefinition):
        cslice(load("int x, y;\ny = x;\nprint(y);"), {"x": 1}, 3, {"y"})
    with pytest.raises(InvalidCriterion):
        cslice(load("int a[2];\na[0] = read();\nprint(a[0]);"), {"a": 1}, 3, {"a"})


def test_refixing_later_definitions_revert():
    p = load("int x, y;\nx = read();\ny = read();\nx = x + y;\nif (x > 0) { y = 1; }\nprint(y);")
    facts = propagate_constants(p, {"x": 2})
    assert 5 not in facts.decided
    assert propagate_constants(p, {"x": 2, "y": 1}).decided == {5: True}


def random_fixing(p, rng):
    names = [v for v in scalar_names(p)]
    out = {}
    for v in rng.sample(names, rng.randint(1, min(2, len(names)))):
        out[v] = rng.randint(-3, 3)
    return out


def _attempt(p, fixed, statement, variables):
    try:
        return cslice(p, fixed, statement, variables)
    except (ContradictoryFixing, NoDefinition):
        return None


@pytest.mark.parametrize("name", NAMES)
def test_conditioned_is_within_static(name):
    p = FIXTURES[name]
    rng = random.Random(5)
    crits = referenced_criteria(p)
    for _ in range(40):
        statement, variables = rng.choice(crits)
        s = _attempt(p, random_fixing(p, rng), statement, variables)
        if s is not None:
            assert set(s.labels) <= set(static_slice(p, statement, variables).labels)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 100_000))
def test_fixing_more_never_enlarges(name, seed):
    p = FIXTURES[name]
    rng = random.Random(seed)
    statement, variables = rng.choice(referenced_criteria(p))
    small = random_fixing(p, rng)
    big = dict(small)
    extra = rng.choice(scalar_names(p))
    big.setdefault(extra, rng.randint(-3, 3))
    a = _attempt(p, small, statement, variables)
    b = _attempt(p, big, statement, variables)
    if a is not None and b is not None:
        assert set(b.labels) <= set(a.labels)


def _consistent_runs(name, fixed, count, seed):
    runs = []
    p = FIXTURES[name]
    overrides = fixing_overrides(p, fixed)
    for run in valid_runs(name, count * 3, seed):
        if isinstance(observe(p, p.labels[-1], [], run, overrides=overrides), str):
            continue
        runs.append(run)
        if len(runs) == count:
            break
    return runs, overrides


@pytest.mark.parametrize("name", NAMES)
def test_conditioned_slices_are_sound_under_the_fixing(name):
    p = FIXTURES[name]
    rng = random.Random(17)
    crits = referenced_criteria(p)
    checked = 0
    for _ in range(12):
        fixed = random_fixing(p, rng)
        try:
            runs, overrides = _consistent_runs(name, fixed, 30, rng.randint(0, 999))
        except NoDefinition:
            continue
        for statement, variables in rng.sample(crits, min(6, len(crits))):
            s = _attempt(p, fixed, statement, variables)
            if s is None:
                continue
            for run in runs:
                want = observe(p, statement, variables, run, overrides=overrides)
                got = observe(s.projected, statement, variables, run, overrides=overrides)
                assert got == want
                checked += 1
    assert checked > 0


def test_fig11_reads_consistent_with_fixing():
    """With n's read returning 1, the projection agrees on sum for any a."""
    p = load_fixture("fig11")
    q = cslice(p, {"n": 1}, 14, {"sum"}).projected
    for a in range(-20, 21):
        assert observe(q, 14, {"sum"}, {"inputs": [1, a]}) == observe(p, 14, {"sum"}, {"inputs": [1, a]})


def test_analysis_errors_share_a_base():
    assert issubclass(ContradictoryFixing, AnalysisError)
