"""The MiniJ language: syntax tree, parser, normalizer, printer, projection."""

from .nodes import (
    Assign,
    Binary,
    Const,
    Decl,
    DeclItem,
    For,
    If,
    IncDec,
    Index,
    Print,
    Program,
    Read,
    Unary,
    Var,
    While,
    ancestors,
    expr_vars,
    iter_labeled,
    parents,
    relabel,
    walk,
)
from .arith import apply_binary, trunc_div
from .normalize import is_normalized, normalize
from .parser import parse, tokenize
from .printer import expr_text, statement_text, unparse
from .projection import project


def load(source: str) -> Program:
    """Parse and normalize MiniJ source; the form every analysis consumes."""
    return normalize(parse(source))


__all__ = [
    "Assign", "Binary", "Const", "Decl", "DeclItem", "For", "If", "IncDec",
    "Index", "Print", "Program", "Read", "Unary", "Var", "While",
    "ancestors", "expr_vars", "iter_labeled", "parents", "relabel", "walk",
    "is_normalized", "normalize", "parse", "tokenize", "expr_text",
    "statement_text", "unparse", "project", "load", "apply_binary", "trunc_div",
]
