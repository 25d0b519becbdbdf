"""Amorphous slicing: a static slice followed by semantics-preserving rewrites.

The rewrites may change syntax freely, so the result can be far smaller
than any syntax-preserving slice.
"""

from __future__ import annotations

from slicekit import StaticCriterion, amorphous_slice, static_slice, unparse
from slicekit.amorphous.analysis import statement_count
from slicekit.fixtures import load_fixture


def main():
    p = load_fixture("fig13")
    print(unparse(p))
    for label, var in ((7, "average"), (6, "biggest")):
        static = static_slice(p, label, {var})
        amorphous = amorphous_slice(p, StaticCriterion(label, {var}))
        print(f"== {var}: static {statement_count(static.projected)} statements, "
              f"amorphous {statement_count(amorphous.projected)}")
        print(unparse(amorphous.projected))


if __name__ == "__main__":
    main()
