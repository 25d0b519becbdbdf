"""Independent reference implementations used to check the analyses.

None of these reuse the production dataflow or postdominator code: data
dependences come from enumerating every path through a loop-free
program, postdominators from the textbook set equations, and control
dependence from its definition.
"""

from __future__ import annotations

import itertools
import random

from slicekit.dependence import ENTRY, EXIT
from slicekit.lang import Assign, For, If, Index, Print, Read, While, expr_vars

INPUT = "<input>"

# -- random loop-free programs ---------------------------------------------------

SCALARS = ("x", "y", "z")


def _expr(rng: random.Random, depth: int = 0) -> str:
    roll = rng.random()
    if depth >= 2 or roll < 0.35:
        return rng.choice(SCALARS + ("1", "2", "-1", "a[0]", "a[1]"))
    op = rng.choice(["+", "-", "*", "<", "==", "&&", "||", "mod"])
    left, right = _expr(rng, depth + 1), _expr(rng, depth + 1)
    if op == "mod":
        right = rng.choice(["2", "3"])
    return f"({left} {op} {right})"


def _stmt(rng: random.Random, budget: list[int], depth: int) -> str:
    budget[0] -= 1
    kind = rng.choices(["assign", "read", "print", "if", "arr"], [4, 2, 1, 2 if depth < 2 else 0, 1])[0]
    v = rng.choice(SCALARS)
    if kind == "assign":
        return f"{v} = {_expr(rng)};"
    if kind == "read":
        return f"{v} = read();"
    if kind == "print":
        return f"print({_expr(rng)});"
    if kind == "arr":
        return f"a[{rng.randint(0, 1)}] = {_expr(rng)};"
    then = _block(rng, budget, depth + 1)
    if rng.random() < 0.5:
        return f"if ({_expr(rng)}) {{ {then} }}"
    orelse = _block(rng, budget, depth + 1)
    return f"if ({_expr(rng)}) {{ {then} }} else {{ {orelse} }}"


def _block(rng, budget, depth) -> str:
    parts = []
    for _ in range(rng.randint(1, 2)):
        if budget[0] <= 0:
            break
        parts.append(_stmt(rng, budget, depth))
    return " ".join(parts)


def random_program(seed: int, max_statements: int = 8) -> str:
    """Source of a random loop-free MiniJ program with at most ``max_statements``."""
    rng = random.Random(seed)
    budget = [max_statements]
    body = []
    while budget[0] > 0 and len(body) < max_statements:
        body.append(_stmt(rng, budget, 0))
        if rng.random() < 0.15:
            break
    body.append(f"print({rng.choice(SCALARS)});")
    return "int x, y, z, a[2];\n" + "\n".join(body) + "\n"


# -- path enumeration ------------------------------------------------------------


def _event(s):
    """``(label, uses, defs)`` for one simple statement or predicate.

    ``defs`` holds ``(name, strong)`` pairs.
    """
    if isinstance(s, Assign):
        t = s.target
        uses = expr_vars(s.value) | (expr_vars(t.index) if isinstance(t, Index) else set())
        return s.label, uses, [(t.name, not isinstance(t, Index))]
    if isinstance(s, Read):
        t = s.target
        uses = {INPUT} | (expr_vars(t.index) if isinstance(t, Index) else set())
        return s.label, uses, [(t.name, not isinstance(t, Index)), (INPUT, True)]
    if isinstance(s, Print):
        return s.label, expr_vars(s.value), []
    if isinstance(s, If):
        return s.label, expr_vars(s.cond), []
    raise TypeError("loop-free programs only")


def paths(stmts):
    """Every execution path through a loop-free block, as event lists."""
    if not stmts:
        return [[]]
    head, rest = stmts[0], stmts[1:]
    tails = paths(rest)
    if isinstance(head, (While, For)):
        raise TypeError("loop-free programs only")
    if isinstance(head, If):
        first = [_event(head)]
        branches = paths(head.then) + paths(head.orelse or ())
        return [first + b + t for b in branches for t in tails]
    return [[_event(head)] + t for t in tails]


def brute_force_data_edges(program) -> set[tuple[int, int, str]]:
    """``(def, use, var)`` triples realised along at least one path."""
    out = set()
    for path in paths(program.body):
        reaching: dict[str, set[int]] = {}
        for label, uses, defs in path:
            for v in uses:
                for d in reaching.get(v, ()):
                    out.add((d, label, v))
            for v, strong in defs:
                if strong:
                    reaching[v] = {label}
                else:
                    reaching.setdefault(v, set()).add(label)
    return out


# -- postdominators and control dependence ----------------------------------------


def postdominator_sets(cfg) -> dict:
    """``pdom(n)`` for every node, by the iterative set equations."""
    nodes = list(cfg.nodes)
    pdom = {n: set(nodes) for n in nodes}
    pdom[EXIT] = {EXIT}
    changed = True
    while changed:
        changed = False
        for n in nodes:
            if n == EXIT:
                continue
            succ = [s for s, _ in cfg.successors(n)]
            new = {n} | set.intersection(*(pdom[s] for s in succ))
            if new != pdom[n]:
                pdom[n] = new
                changed = True
    return pdom


def naive_control_dependences(cfg) -> set[tuple]:
    """``(a, b, tag)``: ``b`` postdominates the ``tag`` successor of ``a`` but not ``a``.

    Entry gets an extra branch straight to Exit.
    """
    pdom = postdominator_sets(cfg)
    out = set()
    branching = [n for n in cfg.nodes if len(cfg.successors(n)) == 2]
    for a in branching + [ENTRY]:
        strict = {EXIT} if a == ENTRY else pdom[a] - {a}
        for s, tag in cfg.successors(a):
            for b in pdom[s]:
                if b not in strict and b != EXIT:
                    out.add((a, b, tag))
    return out


def all_inputs(reads: int, domain=range(-2, 3)):
    """Every input vector of the given length over ``domain``."""
    return [list(t) for t in itertools.product(domain, repeat=reads)]


def count_reads(program) -> int:
    return sum(1 for l in program.labels if isinstance(program[l], Read))
