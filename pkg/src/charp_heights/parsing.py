"""Recursive descent parser for rational function expressions.

Grammar (standard precedence, binary operators left associative, the
power operator binding tightest with a nonnegative integer exponent):

    expr    :=  term  (('+' | '-') term)*
    term    :=  signed (('*' | '/') signed)*
    signed  :=  ('-' | '+')* power
    power   :=  atom ('^' INT)?
    atom    :=  INT | 't' | '(' expr ')'

The same strings that Poly.to_str and RatFunc.to_str produce parse back
to equal values, which is what the round-trip tests pin down.
"""

from __future__ import annotations

from .errors import ExpressionError
from .ratfunc import RatFunc

__all__ = ["parse_ratfunc", "parse_poly"]


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", int(text[i:j]), i))
                i = j
                continue
            if ch == "t":
                self.toks.append(("t", "t", i))
                i += 1
                continue
            if ch in "+-*/^()":
                self.toks.append((ch, ch, i))
                i += 1
                continue
            raise ExpressionError("unexpected character %r" % ch, i)
        self.toks.append(("end", None, len(text)))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ExpressionError("expected %r, found %r" % (kind, tok[1]), tok[2])
        self.pos += 1
        return tok


class _Parser:
    def __init__(self, text, spec):
        self.toks = _Tokens(text)
        self.spec = spec

    def parse(self):
        value = self.expr()
        tok = self.toks.peek()
        if tok[0] != "end":
            raise ExpressionError("trailing input %r" % tok[1], tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.toks.peek()[0] in ("+", "-"):
            op = self.toks.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.signed()
        while self.toks.peek()[0] in ("*", "/"):
            op, _, pos = self.toks.take()
            rhs = self.signed()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ExpressionError("division by zero", pos)
                value = value / rhs
        return value

    def signed(self):
        sign = 1
        while self.toks.peek()[0] in ("+", "-"):
            if self.toks.take()[0] == "-":
                sign = -sign
        value = self.power()
        return value if sign == 1 else -value

    def power(self):
        value = self.atom()
        if self.toks.peek()[0] == "^":
            self.toks.take()
            tok = self.toks.take("int")
            value = value ** tok[1]
        return value

    def atom(self):
        tok = self.toks.peek()
        if tok[0] == "int":
            self.toks.take()
            return RatFunc.from_int(self.spec, tok[1])
        if tok[0] == "t":
            self.toks.take()
            return RatFunc.t(self.spec)
        if tok[0] == "(":
            self.toks.take()
            value = self.expr()
            self.toks.take(")")
            return value
        raise ExpressionError("expected a value, found %r" % (tok[1],), tok[2])


def parse_ratfunc(text, spec):
    """Parse an expression string into a reduced RatFunc over F_q(t)."""
    return _Parser(text, spec).parse()


def parse_poly(text, spec):
    """Parse an expression that must come out polynomial."""
    x = parse_ratfunc(text, spec)
    if not x.is_poly():
        raise ExpressionError("expected a polynomial, got %s" % x)
    return x.num
