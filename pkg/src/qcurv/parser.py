"""Rational expressions in ``x``, ``q`` and declared constants.

Grammar (whitespace is insignificant; implicit multiplication is an error)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := atom ["^" exponent]
    exponent := ["-"] INT ["^" exponent] | "(" ["-"] INT ")" ["^" exponent]
    atom     := INT | NAME | "(" expr ")"

``^`` binds tightest and is right-associative; exponents are integer
literals with ``|e| <= 10**4`` (a chained exponent ``2^3^2`` is folded to
the literal ``2^9``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .algebra.fraction import DivisionByZero
from .algebra.tower import RESERVED, Tower, tower as make_tower

__all__ = [
    "Add",
    "Div",
    "Expr",
    "ExprSyntaxError",
    "MAX_EXPONENT",
    "Mul",
    "Neg",
    "Num",
    "ParseError",
    "Pow",
    "Sub",
    "Sym",
    "UnknownSymbol",
    "eval_expr",
    "parse",
    "parse_value",
]

MAX_EXPONENT = 10**4


class ParseError(ValueError):
    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"at offset {position}: {message}")


class ExprSyntaxError(ParseError):
    pass


class UnknownSymbol(ParseError):
    def __init__(self, position: int, name: str):
        self.name = name
        super().__init__(position, f"unknown symbol {name!r}")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Sym, Neg, Add, Sub, Mul, Div, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")
_BINOPS = {"+": Add, "-": Sub, "*": Mul, "/": Div}


def _tokenize(source: str):
    tokens, pos = [], 0
    n = len(source)
    while pos < n:
        m = _TOKEN.match(source, pos)
        if m is None:
            if source[pos:].strip() == "":
                break
            bad = pos + len(source[pos:]) - len(source[pos:].lstrip())
            raise ExprSyntaxError(bad, f"unexpected character {source[bad]!r}")
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str, names):
        self.tokens = _tokenize(source)
        self.i = 0
        self.names = names

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, text, pos = self.take()
        if kind != "op" or text != op:
            raise ExprSyntaxError(pos, f"expected {op!r}, found {text or 'end of input'!r}")

    def parse(self) -> Expr:
        e = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            if kind in ("int", "name") or text == "(":
                raise ExprSyntaxError(pos, "implicit multiplication is not allowed")
            raise ExprSyntaxError(pos, f"unexpected {text!r}")
        return e

    def expr(self):
        left = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            left = _BINOPS[op](left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            left = _BINOPS[op](left, self.unary())
        return left

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        kind, text, pos = self.peek()
        paren = kind == "op" and text == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, text, pos = self.take()
        if kind != "int":
            raise ExprSyntaxError(pos, "exponent must be an integer literal")
        value = sign * int(text)
        if paren:
            self.expect(")")
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tpos = self.take()[2]
            inner = self.exponent()
            if inner < 0 and abs(value) != 1:
                raise ExprSyntaxError(tpos, "exponent does not fold to an integer")
            if abs(value) > 1 and inner > 14:
                raise ExprSyntaxError(pos, f"exponent exceeds {MAX_EXPONENT}")
            value = value ** abs(inner)
        if abs(value) > MAX_EXPONENT:
            raise ExprSyntaxError(pos, f"exponent exceeds {MAX_EXPONENT}")
        return value

    def atom(self):
        kind, text, pos = self.take()
        if kind == "int":
            return Num(int(text))
        if kind == "name":
            if text not in self.names:
                raise UnknownSymbol(pos, text)
            return Sym(text)
        if kind == "op" and text == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ExprSyntaxError(pos, f"unexpected {text or 'end of input'!r}")


def parse(source: str, declared_constants=()) -> Expr:
    """Parse ``source``; symbols other than ``x``, ``q`` and the declared
    constants raise :class:`UnknownSymbol`."""
    names = set(RESERVED) | set(declared_constants)
    try:
        return _Parser(source, names).parse()
    except RecursionError:
        raise ExprSyntaxError(0, "expression nested too deeply") from None


def eval_expr(e: Expr, tower: Tower):
    """Evaluate to a canonical element of ``K(x)``."""
    X = tower.X
    values = []
    stack = [(e, False)]
    while stack:
        node, ready = stack.pop()
        if isinstance(node, Num):
            values.append(X(node.value))
        elif isinstance(node, Sym):
            values.append(tower.symbol(node.name))
        elif not ready:
            stack.append((node, True))
            if isinstance(node, Neg):
                stack.append((node.arg, False))
            elif isinstance(node, Pow):
                stack.append((node.base, False))
            else:
                stack.append((node.right, False))
                stack.append((node.left, False))
        elif isinstance(node, Neg):
            values.append(-values.pop())
        elif isinstance(node, Pow):
            b = values.pop()
            if node.exponent < 0 and not b:
                raise DivisionByZero("negative power of zero")
            values.append(b**node.exponent)
        else:
            right = values.pop()
            left = values.pop()
            if isinstance(node, Add):
                values.append(left + right)
            elif isinstance(node, Sub):
                values.append(left - right)
            elif isinstance(node, Mul):
                values.append(left * right)
            else:
                if not right:
                    raise DivisionByZero("division by an expression that normalizes to zero")
                values.append(left / right)
    return values.pop()


def parse_value(source: str, tower: Tower = None):
    """Parse and evaluate in one step (default tower: no constants)."""
    tower = tower if tower is not None else make_tower(())
    return eval_expr(parse(source, tower.constants), tower)
