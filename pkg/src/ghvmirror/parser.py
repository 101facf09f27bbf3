"""Expression parser for polynomials, Laurent polynomials and q-difference operators.

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := atom (("^" | "**") exponent)?
    exponent:= ("-" | "+") exponent | atom (("^" | "**") exponent)?
    atom    := INTEGER | IDENT | "(" expr ")"

Exponents must evaluate to integer constants.  The operator target reads
``D``, ``T`` (theta) and ``q`` and normal-orders through DOperator arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .algebra.laurent import LaurentPoly, NonMonomialDenominator
from .algebra.ratfunc import RatFunc
from .qde import DOperator

TARGETS = ("poly", "laurent", "operator")
OPERATOR_SYMBOLS = ("D", "T", "q")


class ParseError(SyntaxError):
    """Malformed input; ``position`` is a 0-based offset into the source."""

    def __init__(self, msg: str, source: str = "", position: int = 0):
        super().__init__(f"{msg} at position {position}")
        self.source = source
        self.position = position


class NonIntegerExponent(ValueError):
    pass


class NotAPolynomial(ValueError):
    pass


# AST --------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    pos: int = 0


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"
    pos: int = 0


Expr = Union[Num, Var, Neg, BinOp, Pow]


# tokens -----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "id", "op", "end"
    text: str
    pos: int


def tokenize(src: str) -> list[_Tok]:
    out = []
    i = 0
    n = len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if m is None or m.end() == i:
            raise ParseError(f"unexpected character {src[i]!r}", src, i)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            out.append(_Tok("id", m.group(2), start))
        else:
            text = "^" if m.group(3) == "**" else m.group(3)
            out.append(_Tok("op", text, start))
        i = m.end()
    out.append(_Tok("end", "", n))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        raise ParseError(msg, self.src, tok.pos)

    def accept(self, *ops: str) -> Optional[_Tok]:
        t = self.tok
        if t.kind == "op" and t.text in ops:
            self.i += 1
            return t
        return None

    def parse(self) -> Expr:
        if self.tok.kind == "end":
            self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while (t := self.accept("+", "-")) is not None:
            left = BinOp(t.text, left, self.term(), t.pos)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while (t := self.accept("*", "/")) is not None:
            left = BinOp(t.text, left, self.unary(), t.pos)
        return left

    def unary(self) -> Expr:
        if (t := self.accept("-")) is not None:
            return Neg(self.unary(), t.pos)
        if self.accept("+") is not None:
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if (t := self.accept("^")) is not None:
            return Pow(base, self.exponent(), t.pos)
        return base

    def exponent(self) -> Expr:
        if (t := self.accept("-")) is not None:
            return Neg(self.exponent(), t.pos)
        if self.accept("+") is not None:
            return self.exponent()
        return self.power()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(int(t.text), t.pos)
        if t.kind == "id":
            self.i += 1
            return Var(t.text, t.pos)
        if self.accept("(") is not None:
            e = self.expr()
            if self.accept(")") is None:
                self.error("expected ')'")
            return e
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")


def parse_ast(src: str) -> Expr:
    return _Parser(src).parse()


def variables(e: Expr) -> list[str]:
    """Variable names in order of first appearance."""
    out: list[str] = []

    def walk(x):
        if isinstance(x, Var):
            if x.name not in out:
                out.append(x.name)
        elif isinstance(x, Neg):
            walk(x.arg)
        elif isinstance(x, BinOp):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, Pow):
            walk(x.base)
            walk(x.exponent)

    walk(e)
    return out


def _constant(e: Expr) -> Optional[Fraction]:
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, Neg):
        v = _constant(e.arg)
        return None if v is None else -v
    if isinstance(e, BinOp):
        a, b = _constant(e.left), _constant(e.right)
        if a is None or b is None:
            return None
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero in constant")
        return a / b
    if isinstance(e, Pow):
        a = _constant(e.base)
        k = _integer_exponent(e)
        return None if a is None else a ** k
    return None


def _integer_exponent(e: Pow) -> int:
    v = _constant(e.exponent)
    if v is None:
        raise NonIntegerExponent(f"exponent at position {e.pos} is not a constant")
    if v.denominator != 1:
        raise NonIntegerExponent(f"exponent {v} at position {e.pos} is not an integer")
    return int(v)


# conversion ---------------------------------------------------------------------


def _to_laurent(e: Expr, vars: tuple, params: dict, allow_laurent: bool, src: str):
    def go(x):
        if isinstance(x, Num):
            return LaurentPoly.const(x.value, vars)
        if isinstance(x, Var):
            if x.name in params:
                return LaurentPoly.const(params[x.name], vars)
            if x.name not in vars:
                raise ParseError(f"unknown variable {x.name!r}", src, x.pos)
            return LaurentPoly.gen(x.name, vars)
        if isinstance(x, Neg):
            return -go(x.arg)
        if isinstance(x, BinOp):
            a, b = go(x.left), go(x.right)
            if x.op == "+":
                return a + b
            if x.op == "-":
                return a - b
            if x.op == "*":
                return a * b
            return divide(a, b, x)
        k = _integer_exponent(x)
        base = go(x.base)
        if k >= 0:
            return base ** k
        return divide(LaurentPoly.const(1, vars), base ** -k, x)

    def divide(a, b, x):
        if b.is_zero():
            raise ZeroDivisionError(f"division by zero at position {x.pos}")
        if b.is_constant():
            return a / b.constant_coeff()
        if not allow_laurent:
            raise NotAPolynomial(f"non-constant denominator at position {x.pos}")
        if not b.is_monomial():
            raise NonMonomialDenominator(f"denominator at position {x.pos} is not a monomial: {b}")
        return a / b

    return go(e)


def _to_operator(e: Expr, src: str) -> DOperator:
    def go(x):
        if isinstance(x, Num):
            return DOperator.const(x.value)
        if isinstance(x, Var):
            if x.name == "D":
                return DOperator.D()
            if x.name == "T":
                return DOperator.theta()
            if x.name == "q":
                return DOperator.q()
            raise ParseError(f"unknown operator symbol {x.name!r} (expected D, T or q)", src, x.pos)
        if isinstance(x, Neg):
            return -go(x.arg)
        if isinstance(x, BinOp):
            a, b = go(x.left), go(x.right)
            if x.op == "+":
                return a + b
            if x.op == "-":
                return a - b
            if x.op == "*":
                return a * b
            c = _constant(x.right)
            if c is None:
                raise NonMonomialDenominator(f"operators divide only by constants (position {x.pos})")
            if c == 0:
                raise ZeroDivisionError(f"division by zero at position {x.pos}")
            return a * DOperator.const(1 / c)
        k = _integer_exponent(x)
        if k < 0:
            if isinstance(x.base, Var) and x.base.name == "q":
                return DOperator.q(k)
            raise NonMonomialDenominator(f"only q has negative powers (position {x.pos})")
        return go(x.base) ** k

    return go(e)


def parse_expression(src: str, target: str = "laurent", vars: Optional[Sequence[str]] = None,
                     params: Sequence[str] = ()):
    """Parse ``src`` and convert it to ``target``: poly, laurent or operator.

    ``vars`` fixes the ring variables (default: order of first appearance).
    Names in ``params`` become rational-function coefficients, one variable each.
    """
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}")
    if not src or not src.strip():
        raise ParseError("empty expression", src or "", 0)
    e = parse_ast(src)
    if target == "operator":
        return _to_operator(e, src)
    pmap = {p: RatFunc.gen(p) for p in params}
    if vars is None:
        vars = tuple(v for v in variables(e) if v not in pmap)
    return _to_laurent(e, tuple(vars), pmap, target == "laurent", src)


__all__ = ["BinOp", "Expr", "NonIntegerExponent", "NonMonomialDenominator", "NotAPolynomial", "Neg",
           "Num", "ParseError", "Pow", "TARGETS", "Var", "parse_ast", "parse_expression", "tokenize",
           "variables"]
