from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicekit.errors import DuplicateDecl, MiniJSyntaxError, ShapeMismatch, UnknownLabel, UseOfUndeclared
from slicekit.fixtures import NAMES, fixture_source, load_fixture
from slicekit.lang import (
    Assign,
    Const,
    For,
    If,
    Print,
    Var,
    ancestors,
    load,
    normalize,
    parse,
    project,
    statement_text,
    unparse,
)

from oracles import random_program
from support import FIXTURES


def texts(p):
    return [statement_text(p[l]) for l in p.labels]


def test_fig1_has_nine_labels_in_source_order():
    p = load_fixture("fig1")
    assert p.labels == list(range(1, 10))
    assert statement_text(p[5]) == "for (counter = 1; counter <= terminate_var; counter = counter + 1)"
    assert statement_text(p[8]) == "print(sum);"


def test_minimal_program_labels():
    p = parse("int x;\nprint(x);")
    assert p.decl_labels == [1]
    assert isinstance(p[2], Print)


def test_syntax_error_reports_position():
    with pytest.raises(MiniJSyntaxError) as info:
        parse("int x;\nx = ;")
    assert (info.value.line, info.value.column) == (2, 5)


@pytest.mark.parametrize(
    "source, error",
    [
        ("int x, x;", DuplicateDecl),
        ("int x; y = 1;", UseOfUndeclared),
        ("int x; x[0] = 1;", ShapeMismatch),
        ("int a[3]; a = 1;", ShapeMismatch),
        ("int x; x = 1 +;", MiniJSyntaxError),
        ("int x; while (x++ < 3) { }", MiniJSyntaxError),
    ],
)
def test_front_end_errors(source, error):
    with pytest.raises(error):
        parse(source)


def test_name_errors_are_syntax_errors_with_position():
    with pytest.raises(MiniJSyntaxError) as info:
        parse("int x;\n  y = 2;")
    assert info.value.line == 2


def test_chained_assignment_splits_right_to_left():
    p = load("int i, pprod, nprod;\ni = pprod = nprod = 1;")
    assert texts(p)[1:] == ["nprod = 1;", "pprod = 1;", "i = 1;"]


def test_chained_assignment_of_expression_copies():
    p = load("int x, y, z;\nx = y = z + 1;")
    assert texts(p)[1:] == ["y = z + 1;", "x = y;"]


def test_compound_and_increment_forms():
    p = load("int x, y, a[3];\nx += 2; y *= x; x++; --y; x = a[++y];")
    assert texts(p)[1:] == [
        "x = x + 2;", "y = y * x;", "x = x + 1;", "y = y - 1;", "y = y + 1;", "x = a[y];",
    ]


def test_for_update_increment_is_desugared():
    p = load("int i;\nfor (i = 0; i < 3; i++) { }")
    s = p[2]
    assert isinstance(s, For)
    assert s.update == (Assign((Var("i"),), parse("int i; i = i + 1;")[2].value),)


def test_mod_and_percent_are_synonyms():
    assert load("int x; x = x % 2;") == load("int x; x = x mod 2;")


def test_fig9_multi_assignment_normalization():
    p = load_fixture("fig9")
    assert [statement_text(p[l]) for l in (6, 7, 8, 9, 10)] == [
        "nprod = 1;", "pprod = 1;", "i = 1;", "nsum = 0;", "psum = 0;",
    ]
    assert len(p.labels) == 37


@pytest.mark.parametrize("name", NAMES)
def test_normalize_is_idempotent(name):
    p = load_fixture(name)
    assert normalize(p) == p


@pytest.mark.parametrize("name", NAMES)
def test_round_trip(name):
    p = parse(fixture_source(name))
    assert parse(unparse(p)) == p
    q = load_fixture(name)
    assert load(unparse(q)) == q


@pytest.mark.parametrize("name", NAMES)
def test_unparse_is_deterministic(name):
    p = load_fixture(name)
    assert unparse(p) == unparse(load_fixture(name))


@pytest.mark.parametrize("name", NAMES)
def test_labels_are_a_bijection(name):
    p = load_fixture(name)
    assert p.labels == list(range(1, len(p.labels) + 1))
    assert len({id(n) for n in p.label_map.values()}) == len(p.labels)


def test_empty_if_block_prints_braces_and_round_trips():
    p = load("int x;\nif (x > 0) { }\nprint(x);")
    assert "if (x > 0) { }" in unparse(p)
    assert load(unparse(p)) == p


def test_negative_literals_and_parentheses():
    p = load("int x, y;\nx = -(y - 3) * 2;\ny = x - (1 - y);\nx = - -y;")
    assert load(unparse(p)) == p
    assert texts(p)[1] == "x = -(y - 3) * 2;"


def test_project_fig1_figure2():
    p = load_fixture("fig1")
    q = project(p, {1, 2, 4, 5, 6, 8})
    assert unparse(q) == (
        "int d, terminate_var, product, sum, counter;\n"
        "terminate_var = read();\n"
        "sum = 0;\n"
        "for (counter = 1; counter <= terminate_var; counter = counter + 1) {\n"
        "    sum = sum + counter;\n"
        "}\n"
        "print(sum);\n"
    )


def test_project_all_labels_is_identity():
    for p in FIXTURES.values():
        assert project(p, p.labels) == p


def test_project_unknown_label():
    with pytest.raises(UnknownLabel):
        project(load_fixture("fig1"), {1, 99})


def test_project_keeps_empty_else_if():
    p = load_fixture("fig9")
    keep = {1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 13, 15, 18, 19, 20, 25, 26, 27, 30, 31, 36}
    text = unparse(project(p, keep))
    assert "} else if (a < 0) { } else if (chk) {" in text
    assert isinstance(project(p, keep)[15], If)


def test_project_always_keeps_declarations():
    p = load_fixture("fig9")
    assert project(p, set()).decls == p.decls


def _closed(p, keep):
    out = set(keep)
    for l in keep:
        out.update(ancestors(p, l))
    return out


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_projection_reparses_and_is_monotone(name, data):
    p = FIXTURES[name]
    small = _closed(p, data.draw(st.sets(st.sampled_from(p.labels))))
    big = _closed(p, small | data.draw(st.sets(st.sampled_from(p.labels))))
    q_small, q_big = project(p, small), project(p, big)
    # the projection reparses and keeps exactly the requested labels
    kept = small | set(p.decl_labels)
    assert len(load(unparse(q_small)).labels) == len(kept)
    assert set(q_small.labels) == kept
    assert set(q_small.labels) <= set(q_big.labels)
    for l in q_small.labels:
        if not hasattr(q_small[l], "cond"):
            assert q_big[l] == q_small[l]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_random_programs_round_trip(seed):
    p = load(random_program(seed))
    assert load(unparse(p)) == p
    assert normalize(p) == p


def test_constant_chain_assigns_constant_to_each_target():
    p = load("int x, y;\nx = y = 3;")
    assert p[2] == Assign((Var("y"),), Const(3), label=2)
    assert p[3] == Assign((Var("x"),), Const(3), label=3)
