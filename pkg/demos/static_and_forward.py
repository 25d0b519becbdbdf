"""Backward and forward static slices on the sum/product program.

Run with ``python demos/static_and_forward.py``.
"""

from __future__ import annotations

from slicekit import static_slice, unparse
from slicekit.fixtures import load_fixture


def show(title, s):
    print(f"== {title}: labels {list(s.labels)}")
    print(unparse(s.projected))


def main():
    p = load_fixture("fig1")
    print("== original")
    print(unparse(p))

    # Everything that can affect sum where it is printed.
    show("backward from print(sum)", static_slice(p, 8, {"sum"}))
    show("backward from print(product)", static_slice(p, 9, {"product"}))

    # Everything the initial sum assignment can affect.
    q = load_fixture("fig3")
    show("forward from sum = 1", static_slice(q, 4, {"sum"}, direction="forward"))


if __name__ == "__main__":
    main()
