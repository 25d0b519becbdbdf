"""Slice-based cohesion of a module that computes two outputs."""

from __future__ import annotations

from slicekit import cohesion, load
from slicekit.fixtures import load_fixture

SEPARATE = """\
int x, y;
x = 1;
y = 2;
x = x + 3;
y = y * 4;
print(x);
print(y);
"""


def main():
    for title, program in (("sum/product", load_fixture("fig1")), ("independent", load(SEPARATE))):
        outputs = {"sum", "product"} if title == "sum/product" else {"x", "y"}
        r = cohesion(program, outputs)
        print(f"== {title}")
        for key, value in r.as_dict().items():
            print(f"  {key}: {value}")


if __name__ == "__main__":
    main()
