"""Conditioned slicing: fix an input and let constant propagation prune.

With ``n`` fixed, some predicates become decided and the branches they
rule out leave the slice.
"""

from __future__ import annotations

from slicekit import ConditionedCriterion, conditioned_slice, static_slice, unparse
from slicekit.fixtures import load_fixture


def main():
    p = load_fixture("fig11")
    print(unparse(p))
    print("static labels:", list(static_slice(p, 14, {"sum"}).labels))
    for n in (1, 0, -1):
        s = conditioned_slice(p, ConditionedCriterion({"n": n}, 14, {"sum"}))
        print(f"n = {n:>2}: labels {list(s.labels)}")
        print(unparse(s.projected))


if __name__ == "__main__":
    main()
