"""Expression parsing and evaluation against a presentation.

Grammar (multiplication is noncommutative and order-preserving; there is no
juxtaposition and no division operator -- a slash is only legal inside an
integer fraction literal):

    sum     :=  item (('+' | '-') item)*
    item    :=  '-' item | product
    product :=  power ('*' power)*
    power   :=  atom ['^' ['-'] INT]
    atom    :=  INT ['/' INT] | IDENT | '(' sum ')'

'^' binds tighter than '*', '*' tighter than '+'; unary minus binds tighter
than '+' and looser than '*'.  Exponents are integer literals; a negative
exponent is accepted by the grammar but only evaluates on invertible
constants (Laurent generators and other units), never on variables.

Identifiers resolve, in order, against the presentation's variable names,
the positional aliases x1..xn, and the coefficient generators.  Canonical
printing uses the positional aliases, so printed normal forms re-parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, star
from .rings import CoeffElem, CoeffRing, NotAUnitError


class ExprError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line} col {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, END
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"[0-9]+|[A-Za-z_][A-Za-z0-9_]*|[-+*^()/]|\S")


def tokenize(src: str) -> list[Token]:
    out = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(src):
        ch = src[pos]
        if ch == "\n":
            line += 1
            line_start = pos + 1
            pos += 1
            continue
        if ch in " \t\r":
            pos += 1
            continue
        m = _TOKEN_RE.match(src, pos)
        text = m.group()
        col = pos - line_start + 1
        if text[0].isdigit():
            kind = "INT"
        elif re.match(r"[A-Za-z_]", text[0]):
            kind = "IDENT"
        elif text in "+-*^()/":
            kind = "OP"
        else:
            raise ExprError(f"unexpected character {text!r}", line, col)
        out.append(Token(kind, text, line, col))
        pos = m.end()
    out.append(Token("END", "", line, len(src) - line_start + 1))
    return out


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int
    col: int


@dataclass(frozen=True)
class Coeff:
    name: str
    line: int
    col: int


@dataclass(frozen=True)
class VarRef:
    index: int
    line: int
    col: int


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    line: int
    col: int


_POSITIONAL = re.compile(r"^x([0-9]+)$")


class _Parser:
    def __init__(self, tokens: list[Token], resolve):
        self.tokens = tokens
        self.pos = 0
        self.resolve = resolve

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.take()
        if tok.kind != "OP" or tok.text != text:
            raise ExprError(f"expected {text!r}, got {tok.text!r}", tok.line, tok.col)
        return tok

    def parse(self):
        e = self.sum()
        tok = self.peek()
        if tok.kind != "END":
            raise ExprError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return e

    def sum(self):
        e = self.item()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.take()
            rhs = self.item()
            e = Add(e, rhs if op.text == "+" else Neg(rhs))
        return e

    def item(self):
        if self.peek().kind == "OP" and self.peek().text == "-":
            self.take()
            return Neg(self.item())
        return self.product()

    def product(self):
        e = self.power()
        while self.peek().kind == "OP" and self.peek().text == "*":
            self.take()
            e = Mul(e, self.power())
        return e

    def power(self):
        e = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            caret = self.take()
            sign = 1
            if self.peek().kind == "OP" and self.peek().text == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok.kind != "INT":
                raise ExprError("exponent must be an integer literal", tok.line, tok.col)
            e = Pow(e, sign * int(tok.text), caret.line, caret.col)
        return e

    def atom(self):
        tok = self.take()
        if tok.kind == "INT":
            value = Fraction(int(tok.text))
            if self.peek().kind == "OP" and self.peek().text == "/":
                self.take()
                den = self.take()
                if den.kind != "INT":
                    raise ExprError("fraction needs an integer denominator", den.line, den.col)
                if int(den.text) == 0:
                    raise ExprError("zero denominator", den.line, den.col)
                value = Fraction(int(tok.text), int(den.text))
            return Num(value, tok.line, tok.col)
        if tok.kind == "IDENT":
            return self.resolve(tok)
        if tok.kind == "OP" and tok.text == "(":
            e = self.sum()
            self.expect_op(")")
            return e
        raise ExprError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.col)


def _presentation_resolver(P):
    gens = set(P.ring.generator_names())

    def resolve(tok: Token):
        name = tok.text
        if name in P.var_names:
            return VarRef(P.var_names.index(name), tok.line, tok.col)
        m = _POSITIONAL.match(name)
        if m and 1 <= int(m.group(1)) <= P.n:
            return VarRef(int(m.group(1)) - 1, tok.line, tok.col)
        if name in gens:
            return Coeff(name, tok.line, tok.col)
        raise ExprError(f"unknown identifier {name!r}", tok.line, tok.col)

    return resolve


def _coeff_resolver(ring: CoeffRing):
    gens = set(ring.generator_names())

    def resolve(tok: Token):
        if tok.text in gens:
            return Coeff(tok.text, tok.line, tok.col)
        raise ExprError(f"unknown coefficient generator {tok.text!r}", tok.line, tok.col)

    return resolve


def parse(src: str, P) -> object:
    """Parse an expression over a presentation; identifiers are resolved
    eagerly so unknown names fail with a position."""
    return _Parser(tokenize(src), _presentation_resolver(P)).parse()


def parse_coeff(src: str, ring: CoeffRing) -> object:
    """Parse a coefficient-only expression (no variables)."""
    return _Parser(tokenize(src), _coeff_resolver(ring)).parse()


# ---------------------------------------------------------------------------
# evaluation


def eval_expr(e, P) -> Poly:
    if isinstance(e, Num):
        return Poly.const(P, P.ring.from_fraction(e.value))
    if isinstance(e, Coeff):
        return Poly.const(P, P.ring.generator(e.name))
    if isinstance(e, VarRef):
        return Poly.variable(P, e.index)
    if isinstance(e, Neg):
        return -eval_expr(e.arg, P)
    if isinstance(e, Add):
        return eval_expr(e.left, P) + eval_expr(e.right, P)
    if isinstance(e, Mul):
        return star(eval_expr(e.left, P), eval_expr(e.right, P))
    if isinstance(e, Pow):
        base = eval_expr(e.base, P)
        if e.exponent >= 0:
            return base**e.exponent
        if not base.is_constant():
            raise ExprError(
                "negative exponent needs an invertible constant", e.line, e.col
            )
        c = base.constant_coeff()
        try:
            inv = c.inverse()
        except NotAUnitError:
            raise ExprError(f"{c} is not invertible", e.line, e.col) from None
        return Poly.const(P, inv ** (-e.exponent))
    raise TypeError(f"not an expression node: {e!r}")


def eval_coeff(e, ring: CoeffRing) -> CoeffElem:
    if isinstance(e, Num):
        return ring.from_fraction(e.value)
    if isinstance(e, Coeff):
        return ring.generator(e.name)
    if isinstance(e, Neg):
        return -eval_coeff(e.arg, ring)
    if isinstance(e, Add):
        return eval_coeff(e.left, ring) + eval_coeff(e.right, ring)
    if isinstance(e, Mul):
        return eval_coeff(e.left, ring) * eval_coeff(e.right, ring)
    if isinstance(e, Pow):
        base = eval_coeff(e.base, ring)
        if e.exponent >= 0:
            return base**e.exponent
        try:
            return base.inverse() ** (-e.exponent)
        except NotAUnitError:
            raise ExprError(f"{base} is not invertible", e.line, e.col) from None
    raise TypeError(f"not a coefficient expression node: {e!r}")


def eval_str(src: str, P) -> Poly:
    return eval_expr(parse(src, P), P)


def coeff_from_str(src: str, ring: CoeffRing) -> CoeffElem:
    return eval_coeff(parse_coeff(src, ring), ring)
