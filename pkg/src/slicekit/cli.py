"""``slicekit`` command-line front end.

Exit codes: 0 success, 1 usage error or unreadable file, 2 MiniJ parse
error, 3 analysis or runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import fixtures
from .amorphous import amorphous_slice
from .cohesion import cohesion
from .conditioned import conditioned_slice
from .criteria import (
    ConditionedCriterion,
    DynamicCriterion,
    InputStream,
    Occurrence,
    SimultaneousCriterion,
    Slice,
    StaticCriterion,
)
from .dependence import build_cfg, build_pdg, export_dot
from .dynamic import dynamic_slice, execute, simultaneous_dynamic_slice
from .errors import AnalysisError, MiniJRuntimeError, MiniJSyntaxError, SliceKitError
from .lang import load, unparse
from .static import backward_slice, forward_slice

METHODS = (
    "static", "forward", "dynamic", "simultaneous", "conditioned",
    "amorphous", "cohesion", "pdg", "cfg", "run",
)
FORMATS = ("source", "labels", "dot", "json")
SLICE_METHODS = ("static", "forward", "dynamic", "simultaneous", "conditioned", "amorphous")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="slicekit", description="Slice, run and measure MiniJ programs.")
    ap.add_argument("file", help="MiniJ source file")
    ap.add_argument("--method", required=True, choices=METHODS)
    ap.add_argument("--at", type=int, help="criterion statement label")
    ap.add_argument("--var", action="append", default=[], help="criterion variable (repeatable)")
    ap.add_argument("--occurrence", type=int, help="k-th execution of --at (dynamic only)")
    ap.add_argument("--input", action="append", default=[],
                    help='read values in order, e.g. "0,0,2" (repeatable for simultaneous)')
    ap.add_argument("--fix", action="append", default=[], metavar="NAME=VALUE",
                    help="fix a variable at its first definition (conditioned)")
    ap.add_argument("--outputs", action="append", default=[],
                    help="output variables for cohesion (repeatable or comma-separated)")
    ap.add_argument("--format", choices=FORMATS)
    return ap


def _split(values: list[str]) -> list[str]:
    return [v.strip() for item in values for v in item.split(",") if v.strip()]


def _inputs(args) -> list[InputStream]:
    try:
        return [InputStream.parse(text) for text in args.input]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fixings(args) -> dict[str, int]:
    out = {}
    for item in args.fix:
        name, sep, value = item.partition("=")
        try:
            if not sep or not name.strip():
                raise ValueError
            out[name.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--fix expects NAME=INTEGER, got {item!r}") from None
    return out


def validate(args) -> None:
    """Method-specific flag checks, done before any analysis runs."""
    m = args.method
    needs_criterion = m in SLICE_METHODS
    if needs_criterion and args.at is None:
        raise UsageError(f"--method {m} requires --at")
    if needs_criterion and not _split(args.var):
        raise UsageError(f"--method {m} requires at least one --var")
    if args.occurrence is not None:
        if m != "dynamic":
            raise UsageError("--occurrence is only valid with --method dynamic")
        if args.occurrence < 1:
            raise UsageError("--occurrence must be >= 1")
    if args.fix and m != "conditioned":
        raise UsageError("--fix is only valid with --method conditioned")
    if m == "simultaneous" and not args.input:
        raise UsageError("--method simultaneous requires at least one --input")
    if m in ("dynamic", "run") and len(args.input) > 1:
        raise UsageError(f"--method {m} takes a single --input")
    if m == "cohesion" and not _split(args.outputs):
        raise UsageError("--method cohesion requires --outputs")
    fmt = args.format
    if m in ("pdg", "cfg") and fmt not in (None, "dot"):
        raise UsageError(f"--method {m} only supports --format dot")
    if m in ("cohesion", "run") and fmt not in (None, "source", "json"):
        raise UsageError(f"--method {m} supports --format source or json")


def _criterion_json(args, inputs, fixed) -> dict:
    out = {"statement": args.at, "variables": sorted(set(_split(args.var)))}
    if args.method == "dynamic":
        out["occurrence"] = args.occurrence or 1
    if args.method in ("dynamic", "simultaneous"):
        out["inputs"] = [list(i.values) for i in inputs]
    if args.method == "conditioned":
        out["fixed"] = dict(sorted(fixed.items()))
    return out


def compute_slice(program, args) -> Slice:
    variables = set(_split(args.var))
    inputs = _inputs(args)
    m = args.method
    if m in ("static", "forward", "amorphous"):
        c = StaticCriterion(args.at, variables)
        if m == "amorphous":
            return amorphous_slice(program, c)
        pdg = build_pdg(program)
        return (backward_slice if m == "static" else forward_slice)(pdg, program, c)
    if m == "dynamic":
        inp = inputs[0] if inputs else InputStream(())
        c = DynamicCriterion(inp, Occurrence(args.at, args.occurrence or 1), variables)
        return dynamic_slice(program, c)
    if m == "simultaneous":
        return simultaneous_dynamic_slice(program, SimultaneousCriterion(inputs, args.at, variables))
    return conditioned_slice(program, ConditionedCriterion(_fixings(args), args.at, variables))


def slice_report(program, s: Slice, args) -> dict:
    return {
        "technique": s.technique.value,
        "criterion": _criterion_json(args, _inputs(args), _fixings(args)),
        "labels": list(s.labels),
        "statement_texts": s.statement_texts,
        "slice_size": s.size,
        "program_size": len(program.labels),
        "fell_back": s.fell_back,
        "exhausted_reads": s.exhausted_reads,
        "discrepancy_notes": fixtures.discrepancy_notes(fixtures.identify(program), s.technique.value),
    }


def _render(program, args) -> str:
    m = args.method
    if m in ("pdg", "cfg"):
        return export_dot(build_pdg(program) if m == "pdg" else build_cfg(program))
    if m == "run":
        inputs = _inputs(args)
        trace = execute(program, inputs[0] if inputs else ())
        if args.format == "json":
            return json.dumps(
                {"outputs": list(trace.outputs), "exhausted_reads": trace.exhausted_reads}
            ) + "\n"
        return "".join(f"{v}\n" for v in trace.outputs)
    if m == "cohesion":
        report = cohesion(program, _split(args.outputs))
        if args.format == "json":
            return json.dumps(report.as_dict(), indent=2) + "\n"
        lines = [f"length: {report.length}"]
        lines += [f"slice {v}: {n}" for v, n in report.slice_sizes.items()]
        for name in ("tightness", "coverage", "overlap"):
            value = getattr(report, name)
            lines.append(f"{name}: {value} ({float(value):.4f})")
        return "\n".join(lines) + "\n"

    s = compute_slice(program, args)
    fmt = args.format or "source"
    if fmt == "labels":
        return " ".join(map(str, s.labels)) + "\n"
    if fmt == "json":
        return json.dumps(slice_report(program, s, args), indent=2) + "\n"
    if fmt == "dot":
        return export_dot(build_pdg(program), highlight=s.labels)
    return unparse(s.projected)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        validate(args)
        _fixings(args)
        _inputs(args)
    except UsageError as exc:
        print(f"slicekit: error: {exc}", file=sys.stderr)
        return 1
    try:
        with open(args.file, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        print(f"slicekit: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    try:
        program = load(source)
    except MiniJSyntaxError as exc:
        print(f"{args.file}:{exc.line}:{exc.column}: syntax error: {exc.message}", file=sys.stderr)
        return 2
    try:
        text = _render(program, args)
    except UsageError as exc:
        print(f"slicekit: error: {exc}", file=sys.stderr)
        return 1
    except (AnalysisError, MiniJRuntimeError, SliceKitError) as exc:
        print(f"slicekit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
