"""Recursive-descent parser for the formula grammar.

::

    formula     := implication
    implication := disjunction ("->" implication)?
    disjunction := conjunction ("|" conjunction)*
    conjunction := unary ("&" unary)*
    unary       := "~" unary | ("A" | "E") x<k> "." formula | primary
    primary     := term "=" term | "(" formula ")"
    term        := power ("*" power)*
    power       := atom ("^" ("-1" | atom))*
    atom        := "1" | x<k> | p<k> | "[" term "," term "]" | "(" term ")"

Whitespace is insignificant.  ``^`` binds tighter than ``*``; ``&`` tighter
than ``|`` tighter than ``->``; a quantifier's scope extends as far right
as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError, UnboundVariableError
from .syntax import (
    And,
    Comm,
    Conj,
    Eq,
    Exists,
    ForAll,
    Identity,
    Implies,
    Inverse,
    Not,
    Or,
    Param,
    Product,
    Var,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<var>x\d+)
  | (?P<param>p\d+)
  | (?P<quant>[AE])
  | (?P<num>\d+)
  | (?P<punct>[\[\](),.*^=~&|-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + chunk.rindex("\n") + 1
        else:
            value = m.group()
            tokens.append(Token(value if kind in ("punct", "arrow") else kind, value, line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0
        self.furthest = None

    @property
    def tok(self):
        return self.tokens[self.pos]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        err = FormulaSyntaxError(message, tok.line, tok.column)
        if self.furthest is None or (tok.line, tok.column) >= (self.furthest.line, self.furthest.column):
            self.furthest = err
        raise err

    def expect(self, kind, what=None):
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            self.fail(f"expected {what or kind!r}, found {found!r}")
        self.pos += 1
        return tok

    def accept(self, kind):
        if self.tok.kind == kind:
            self.pos += 1
            return True
        return False

    # formulas

    def formula(self):
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        parts = [self.conjunction()]
        while self.accept("|"):
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self):
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        if self.accept("~"):
            return Not(self.unary())
        if self.tok.kind == "quant":
            cls = ForAll if self.tok.text == "A" else Exists
            self.pos += 1
            var = self.expect("var", "variable x<k>")
            self.expect(".", "'.'")
            return cls(int(var.text[1:]), self.formula())
        return self.primary()

    def primary(self):
        start = self.pos
        if self.tok.kind == "(":
            try:
                return self.equation()
            except FormulaSyntaxError:
                self.pos = start
            self.pos += 1
            inner = self.formula()
            self.expect(")", "')'")
            return inner
        return self.equation()

    def equation(self):
        left = self.term()
        self.expect("=", "'='")
        return Eq(left, self.term())

    # terms

    def term(self):
        t = self.power()
        while self.accept("*"):
            t = Product(t, self.power())
        return t

    def power(self):
        t = self.atom()
        while self.accept("^"):
            if self.accept("-"):
                one = self.expect("num", "1")
                if one.text != "1":
                    self.fail("only ^-1 is allowed", one)
                t = Inverse(t)
            else:
                t = Conj(t, self.atom())
        return t

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            if tok.text != "1":
                self.fail(f"numeral {tok.text!r} is not a term (only 1 is)")
            self.pos += 1
            return Identity()
        if tok.kind == "var":
            self.pos += 1
            return Var(int(tok.text[1:]))
        if tok.kind == "param":
            self.pos += 1
            return Param(int(tok.text[1:]))
        if self.accept("["):
            left = self.term()
            self.expect(",", "','")
            right = self.term()
            self.expect("]", "']'")
            return Comm(left, right)
        if self.accept("("):
            inner = self.term()
            self.expect(")", "')'")
            return inner
        self.fail(f"expected a term, found {tok.text or 'end of input'!r}")


def parse(text: str, free_vars=None):
    """Parse a formula.

    If ``free_vars`` (an iterable of variable indices) is given, any other
    free variable raises :class:`UnboundVariableError`.
    """
    p = _Parser(text)
    try:
        f = p.formula()
        p.expect("eof", "end of input")
    except FormulaSyntaxError as err:
        raise (p.furthest or err) from None
    if free_vars is not None:
        extra = sorted(f.free_vars - set(free_vars))
        if extra:
            raise UnboundVariableError(f"unbound variable x{extra[0]}")
    return f


def parse_term(text: str):
    p = _Parser(text)
    try:
        t = p.term()
        p.expect("eof", "end of input")
    except FormulaSyntaxError as err:
        raise (p.furthest or err) from None
    return t
