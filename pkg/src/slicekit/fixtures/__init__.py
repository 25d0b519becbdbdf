"""MiniJ transliterations of the worked examples, plus their known quirks."""

from __future__ import annotations

from pathlib import Path

from ..lang import Program, load

FIXTURE_DIR = Path(__file__).parent
NAMES = ("fig1", "fig3", "fig6", "fig9", "fig11", "fig13")


def fixture_path(name: str) -> Path:
    return FIXTURE_DIR / f"{name}.mj"


def fixture_source(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


def load_fixture(name: str) -> Program:
    """Parsed and normalized fixture program."""
    return load(fixture_source(name))


def identify(program: Program) -> str | None:
    """Name of the fixture structurally equal to ``program``, if any."""
    for name in NAMES:
        if load_fixture(name) == program:
            return name
    return None


# Known inconsistencies in the reference listings, keyed by (fixture, method).
DISCREPANCIES: dict[tuple[str, str], tuple[str, ...]] = {
    ("fig1", "static"): (
        "reference caption cites criterion (9, sum), but the listed slice is the "
        "backward slice at statement 8 (print of sum); this fixture slices at 8",
    ),
    ("fig3", "static"): (
        "the reference backward-slice listing for this program omits the read of "
        "terminate_var although the retained loop uses it; treated as abbreviated",
    ),
    ("fig6", "dynamic"): (
        "reference text says the first occurrence of statement 8; the criterion "
        "is the first occurrence of statement 9 (the print), as in the caption",
    ),
    ("fig9", "simultaneous"): (
        "reference criterion names statement 32 (prod = pprod), which cannot yield "
        "the listed slice on sum; the print of sum is used instead",
        "reference inputs list two values of a but the loop performs a third read; "
        "reads past the end of the input return 0 and are counted in exhausted_reads",
        "reference line 6 (i = pprod = nprod = 1) is split by normalization; only "
        "i = 1 survives in the slice",
    ),
    ("fig11", "conditioned"): (
        "reference slice also lists line 9 (a += 5), which cannot affect sum at "
        "statement 14; it is not part of this result",
    ),
    ("fig13", "amorphous"): (
        "reference amorphous slice writes ++i in the loop header; the normalized "
        "form i = i + 1 is printed instead",
    ),
}


def discrepancy_notes(name: str | None, method: str) -> list[str]:
    if name is None:
        return []
    return list(DISCREPANCIES.get((name, method), ()))
