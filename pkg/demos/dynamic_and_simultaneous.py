"""Dynamic slices for one input, and a simultaneous slice over several.

A dynamic slice keeps only what influenced one execution of a statement,
so an assignment that was never reached (or was overwritten) drops out.
"""

from __future__ import annotations

from slicekit import (
    DynamicCriterion,
    Occurrence,
    SimultaneousCriterion,
    dynamic_slice,
    execute,
    simultaneous_dynamic_slice,
    static_slice,
    unparse,
)
from slicekit.fixtures import load_fixture


def main():
    p = load_fixture("fig6")
    print(unparse(p))
    print("outputs for n = 2:", execute(p, [2]).outputs)

    static = static_slice(p, 9, {"x"})
    dyn = dynamic_slice(p, DynamicCriterion([2], Occurrence(9, 1), {"x"}))
    print("static  labels:", list(static.labels))
    print("dynamic labels:", list(dyn.labels), "(n = 2)")
    print(unparse(dyn.projected))

    # One slice that is correct for every input in the set.
    q = load_fixture("fig9")
    inputs = ["a1=0, chk=0, n=2, a2=2", "a1=0, chk=1, n=2, a2=2"]
    sds = simultaneous_dynamic_slice(q, SimultaneousCriterion(inputs, 36, {"sum"}))
    print("simultaneous labels:", list(sds.labels))
    print("fell back to static:", sds.fell_back, "| exhausted reads:", sds.exhausted_reads)


if __name__ == "__main__":
    main()
