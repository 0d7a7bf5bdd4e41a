"""Recursive-descent parser for the expression language.

Grammar, loosest binding first::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" unary)?            # right associative
    atom   := number ["j"] | "j" | "h" | "pi"
            | name "(" expr ("," number)* ")" | "(" expr ")"

``conj`` is accepted as a function name and yields a non-holomorphic
node.  Error offsets are byte offsets into the source string.
"""

from __future__ import annotations

import math
import re

from .algebra import DoubleNumber
from .elementary import BUILTINS
from .errors import ExpressionSyntaxError, UnknownFunctionError
from .expr import Apply, BinOp, Conj, Const, Expr, Neg, Var

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?j?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos


def _tokenize(src: str) -> list[_Tok]:
    toks, pos = [], 0
    while True:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            rest = len(src) - len(src[pos:].lstrip())
            if rest == len(src):
                toks.append(_Tok("end", "", _byte(src, len(src))))
                return toks
            raise ExpressionSyntaxError(f"unexpected character {src[rest]!r}", _byte(src, rest))
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), _byte(src, m.start(kind))))
        pos = m.end()


def _byte(src: str, i: int) -> int:
    return len(src[:i].encode())


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.cur.kind == "op" and self.cur.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.fail(f"expected {text!r}")

    def fail(self, what: str):
        tok = self.cur
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExpressionSyntaxError(f"{what}, found {found}", tok.pos)

    def parse(self) -> Expr:
        e = self.expr()
        if self.cur.kind != "end":
            self.fail("expected operator or end of input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self.take().text
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self.take().text
            e = BinOp(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.cur
        if tok.kind == "num":
            self.take()
            if tok.text.endswith("j"):
                return Const(DoubleNumber(0.0, float(tok.text[:-1])))
            return Const(DoubleNumber(float(tok.text)))
        if tok.kind == "name":
            self.take()
            if self.cur.kind == "op" and self.cur.text == "(":
                return self.call(tok)
            if tok.text == "h":
                return Var()
            if tok.text == "j":
                return Const(DoubleNumber(0.0, 1.0))
            if tok.text == "pi":
                return Const(DoubleNumber(math.pi))
            raise ExpressionSyntaxError(f"unknown identifier {tok.text!r}", tok.pos)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail("expected a number, 'h', 'j', a function call or '('")

    def call(self, name: _Tok) -> Expr:
        if name.text != "conj" and name.text not in BUILTINS:
            raise UnknownFunctionError(name.text, name.pos)
        self.expect("(")
        arg = self.expr()
        params = []
        while self.accept(","):
            params.append(self.param())
        self.expect(")")
        if name.text == "conj":
            if params:
                raise ExpressionSyntaxError("conj takes one argument", name.pos)
            return Conj(arg)
        lo, hi = BUILTINS[name.text].n_params
        if not lo <= len(params) <= hi:
            raise ExpressionSyntaxError(
                f"{name.text} takes {lo}..{hi} extra parameters, got {len(params)}", name.pos
            )
        return Apply(name.text, arg, tuple(params))

    def param(self):
        neg = self.accept("-")
        tok = self.cur
        if tok.kind != "num" or tok.text.endswith("j"):
            self.fail("expected a real parameter")
        self.take()
        v = float(tok.text)
        v = -v if neg else v
        return int(v) if v.is_integer() and not re.search(r"[.eE]", tok.text) else v


def parse_expression(src: str) -> Expr:
    return _Parser(src).parse()
