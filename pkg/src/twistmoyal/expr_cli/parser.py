"""Tokenizer, recursive-descent parser and printer for the expression language.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := atom ('^' uint)?
    atom   := rational | 'i' | symbol | func '(' args ')' | '(' expr ')'

Symbols are ``x1 x2 theta eps1 eps2`` and ``w<ab>^<mu>`` with ``a, b, mu``
in ``{1, 2}``.  ``1/2`` is a single rational token (there is no division).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "ParseError",
    "Num",
    "Imag",
    "Sym",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "Ast",
    "parse",
    "unparse",
    "FUNCTION_ARITY",
]


class ParseError(ValueError):
    def __init__(self, message: str, source: str, offset: int):
        line = source.count("\n", 0, offset) + 1
        col = offset - (source.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col} (offset {offset})")
        self.offset, self.line, self.column = offset, line, col


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Ast"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Ast", ...]
    weight: Fraction | None = None   # gauss only


Ast = Union[Num, Imag, Sym, Neg, BinOp, Pow, Call]

FUNCTION_ARITY = {
    "star": 2, "comm": 2, "acomm": 2,
    "d1": 1, "d2": 1, "X1": 1, "X2": 1,
    "gauss": 2,
}
_PLAIN_SYMBOLS = {"x1", "x2", "theta", "eps1", "eps2"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<omega>w[12][12]\^[12])
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(source: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if not m:
            raise ParseError(f"unexpected character {source[pos]!r}", source, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(source)))
    return out


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.toks = _tokenize(source)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return ParseError(msg, self.source, tok.pos)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text or t.kind not in ("op",):
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.take()

    def parse(self) -> Ast:
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected token {self.peek().text!r}")
        return node

    def expr(self) -> Ast:
        node = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Ast:
        node = self.unary()
        while self.peek().text == "*" and self.peek().kind == "op":
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Ast:
        if self.peek().text == "-" and self.peek().kind == "op":
            self.take()
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Ast:
        node = self.atom()
        if self.peek().text == "^" and self.peek().kind == "op":
            self.take()
            t = self.peek()
            if t.kind != "num" or "/" in t.text:
                raise self.error("exponent must be a non-negative integer")
            self.take()
            node = Pow(node, int(t.text))
        return node

    def atom(self) -> Ast:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Num(Fraction(t.text))
        if t.kind == "omega":
            self.take()
            return Sym(t.text)
        if t.kind == "name":
            self.take()
            if t.text == "i":
                return Imag()
            if t.text in _PLAIN_SYMBOLS:
                return Sym(t.text)
            if t.text in FUNCTION_ARITY:
                return self.call(t)
            raise self.error(f"unknown symbol {t.text!r}", t)
        if t.text == "(" and t.kind == "op":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise self.error(f"expected an operand, found {found}")

    def call(self, name_tok: _Tok) -> Ast:
        name = name_tok.text
        self.expect("(")
        args = []
        if not (self.peek().text == ")" and self.peek().kind == "op"):
            args.append(self.arg(name, 0))
            while self.peek().text == "," and self.peek().kind == "op":
                self.take()
                args.append(self.arg(name, len(args)))
        self.expect(")")
        arity = FUNCTION_ARITY[name]
        if len(args) != arity:
            raise self.error(f"{name} takes {arity} argument(s), got {len(args)}", name_tok)
        if name == "gauss":
            return Call(name, (args[1],), args[0])
        return Call(name, tuple(args))

    def arg(self, name: str, index: int):
        if name == "gauss" and index == 0:
            t = self.peek()
            if t.kind != "num":
                raise self.error("gauss weight must be a positive rational literal")
            self.take()
            w = Fraction(t.text)
            if w <= 0:
                raise self.error("gauss weight must be positive", t)
            return w
        return self.expr()


def parse(source: str) -> Ast:
    return _Parser(source).parse()


# precedence: expr 1, term 2, unary 3, factor 4, atom 5
def _prec(node: Ast) -> int:
    if isinstance(node, BinOp):
        return 1 if node.op in "+-" else 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    if isinstance(node, Num) and node.value.denominator != 1:
        return 5
    return 5


def _wrap(node: Ast, need: int) -> str:
    text = unparse(node)
    return f"({text})" if _prec(node) < need else text


def unparse(node: Ast) -> str:
    """Text that parses back to an identical tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{_wrap(node.left, 1)} {node.op} {_wrap(node.right, 2)}"
        return f"{_wrap(node.left, 2)}*{_wrap(node.right, 3)}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exponent}"
    if isinstance(node, Call):
        args = [unparse(a) for a in node.args]
        if node.name == "gauss":
            args = [str(node.weight)] + args
        return f"{node.name}({', '.join(args)})"
    raise TypeError(f"not an expression node: {node!r}")
