"""Tokenizer and recursive-descent parser for MiniJ.

Grammar::

    program   := decl* stmt*
    decl      := "int" declarator ("," declarator)* ";"
    declarator:= ident | ident "[" INT "]"
    stmt      := assign ";" | lvalue "=" "read" "(" ")" ";" | "print" "(" expr ")" ";"
               | "if" "(" expr ")" block ("else" (block | if-stmt))?
               | "while" "(" expr ")" block
               | "for" "(" assign-list? ";" expr ";" assign-list? ")" block
    assign    := lvalue ("=" | "+=" | "-=" | "*=" | "/=") expr
               | ("++" | "--") lvalue | lvalue ("++" | "--")
    block     := "{" stmt* "}" | stmt

Expressions use C/Java precedence; ``mod`` and ``%`` are synonyms.
Names are resolved against the declarations while parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DuplicateDecl, MiniJSyntaxError, ShapeMismatch, UseOfUndeclared
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
    relabel,
    sub_exprs,
)

KEYWORDS = {"int", "read", "print", "if", "else", "while", "for", "mod"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\+\+|--|\+=|-=|\*=|/=|==|!=|<=|>=|&&|\|\||[-+*/%<>=!(){}\[\];,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'ident', 'kw', 'op', 'eof'
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise MiniJSyntaxError(
                f"unexpected character {source[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        text = m.group()
        if kind not in ("ws", "comment"):
            if kind == "ident" and text in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# binary operator precedence, loosest first
_LEVELS = [
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "mod", "%"),
]
_ASSIGN_OPS = ("=", "+=", "-=", "*=", "/=")


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.scope: dict[str, DeclItem] = {}

    # -- token plumbing --

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("op", "kw") and self.tok.text in texts

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise MiniJSyntaxError(f"{message} (found {found})", tok.line, tok.column)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.error("expected identifier")
        return self.advance()

    # -- declarations --

    def program(self) -> Program:
        decls = []
        while self.at("int"):
            decls.append(self.decl())
        body = []
        while self.tok.kind != "eof":
            if self.at("int"):
                self.error("declarations must precede statements")
            body.append(self.stmt())
        return Program(tuple(decls), tuple(body))

    def decl(self) -> Decl:
        self.expect("int")
        items = [self.declarator()]
        while self.at(","):
            self.advance()
            items.append(self.declarator())
        self.expect(";")
        return Decl(tuple(items))

    def declarator(self) -> DeclItem:
        name = self.ident()
        size = None
        if self.at("["):
            self.advance()
            if self.tok.kind != "int":
                self.error("expected array size")
            size_tok = self.advance()
            size = int(size_tok.text)
            if size < 1:
                self.error("array size must be positive", size_tok)
            self.expect("]")
        if name.text in self.scope:
            raise DuplicateDecl(
                f"duplicate declaration of {name.text!r}", name.line, name.column
            )
        item = DeclItem(name.text, size)
        self.scope[name.text] = item
        return item

    # -- statements --

    def block(self) -> tuple:
        if self.at("{"):
            self.advance()
            stmts = []
            while not self.at("}"):
                if self.tok.kind == "eof":
                    self.error("expected '}'")
                stmts.append(self.stmt())
            self.advance()
            return tuple(stmts)
        return (self.stmt(),)

    def stmt(self):
        if self.at("if"):
            return self.if_stmt()
        if self.at("while"):
            self.advance()
            cond = self.paren_cond()
            return While(cond, self.block())
        if self.at("for"):
            return self.for_stmt()
        if self.at("print"):
            self.advance()
            self.expect("(")
            value = self.expr()
            self.expect(")")
            self.expect(";")
            return Print(value)
        if self.tok.kind == "ident":
            save = self.pos
            target = self.lvalue()
            if self.at("=") and self.peek().text == "read":
                self.advance()
                self.advance()
                self.expect("(")
                self.expect(")")
                self.expect(";")
                return Read(target)
            self.pos = save
        if self.tok.kind == "ident" or self.at("++", "--"):
            a = self.assign()
            self.expect(";")
            return a
        self.error("expected statement")

    def if_stmt(self) -> If:
        self.expect("if")
        cond = self.paren_cond()
        then = self.block()
        orelse = None
        if self.at("else"):
            self.advance()
            orelse = (self.if_stmt(),) if self.at("if") else self.block()
        return If(cond, then, orelse)

    def paren_cond(self):
        self.expect("(")
        start = self.tok
        cond = self.expr()
        if _has_incdec(cond):
            self.error("increment/decrement is not allowed in a condition", start)
        self.expect(")")
        return cond

    def for_stmt(self) -> For:
        self.expect("for")
        self.expect("(")
        init = self.assign_list(";")
        self.expect(";")
        start = self.tok
        cond = self.expr()
        if _has_incdec(cond):
            self.error("increment/decrement is not allowed in a condition", start)
        self.expect(";")
        update = self.assign_list(")")
        self.expect(")")
        return For(init, cond, update, self.block())

    def assign_list(self, closer: str) -> tuple:
        if self.at(closer):
            return ()
        items = [self.assign()]
        while self.at(","):
            self.advance()
            items.append(self.assign())
        return tuple(items)

    def assign(self) -> Assign:
        if self.at("++", "--"):
            op = self.advance().text
            return Assign((self.lvalue(),), None, op)
        targets = [self.lvalue()]
        if self.at("++", "--"):
            return Assign(tuple(targets), None, self.advance().text)
        if not self.at(*_ASSIGN_OPS):
            self.error("expected assignment operator")
        op = self.advance().text
        if op == "=":
            # chained a = b = ... = expr
            while True:
                save = self.pos
                if self.tok.kind == "ident":
                    try:
                        lv = self.lvalue()
                    except MiniJSyntaxError:
                        self.pos = save
                        break
                    if self.at("=") and self.peek().text != "read":
                        self.advance()
                        targets.append(lv)
                        continue
                self.pos = save
                break
        value = self.expr()
        return Assign(tuple(targets), value, op)

    def lvalue(self):
        name = self.ident()
        if self.at("["):
            self.advance()
            index = self.expr()
            self.expect("]")
            self._resolve(name, array=True)
            return Index(name.text, index)
        self._resolve(name, array=False)
        return Var(name.text)

    def _resolve(self, name: Token, array: bool):
        item = self.scope.get(name.text)
        if item is None:
            raise UseOfUndeclared(
                f"use of undeclared variable {name.text!r}", name.line, name.column
            )
        if item.is_array != array:
            what = "array used without an index" if item.is_array else "scalar indexed"
            raise ShapeMismatch(f"{what}: {name.text!r}", name.line, name.column)

    # -- expressions --

    def expr(self, level: int = 0):
        if level == len(_LEVELS):
            return self.unary()
        left = self.expr(level + 1)
        while self.at(*_LEVELS[level]):
            op = self.advance().text
            if op == "%":
                op = "mod"
            right = self.expr(level + 1)
            left = Binary(op, left, right)
        return left

    def unary(self):
        if self.at("-"):
            self.advance()
            if self.tok.kind == "int":
                return Const(-int(self.advance().text))
            return Unary("-", self.unary())
        if self.at("!"):
            self.advance()
            return Unary("!", self.unary())
        if self.at("++", "--"):
            op = self.advance().text
            return IncDec(op, self.lvalue(), prefix=True)
        return self.postfix()

    def postfix(self):
        if self.tok.kind == "ident":
            lv = self.lvalue()
            if self.at("++", "--"):
                return IncDec(self.advance().text, lv, prefix=False)
            return lv
        return self.primary()

    def primary(self):
        if self.tok.kind == "int":
            return Const(int(self.advance().text))
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.error("expected expression")


def _has_incdec(e) -> bool:
    return any(isinstance(x, IncDec) for x in sub_exprs(e))


def parse(source: str) -> Program:
    """Parse MiniJ text into a labeled (but not normalized) Program."""
    return relabel(_Parser(source).program())
