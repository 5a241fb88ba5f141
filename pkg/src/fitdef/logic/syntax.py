"""Terms and formulas of the first-order language of groups.

Variables are ``x<k>`` (``Var(k)``) and parameter slots ``p<k>``
(``Param(k)``).  ``render`` produces the canonical text accepted by
:func:`fitdef.logic.parser.parse`; the two are mutually inverse on
canonical text and on ASTs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union


# terms ----------------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Var:
    index: int

    @property
    def name(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Param:
    index: int


@dataclass(frozen=True)
class Product:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inverse:
    arg: "Term"


@dataclass(frozen=True)
class Conj:
    base: "Term"
    by: "Term"


@dataclass(frozen=True)
class Comm:
    left: "Term"
    right: "Term"


Term = Union[Identity, Var, Param, Product, Inverse, Conj, Comm]


def term_children(t) -> tuple:
    if isinstance(t, (Identity, Var, Param)):
        return ()
    if isinstance(t, Inverse):
        return (t.arg,)
    if isinstance(t, Conj):
        return (t.base, t.by)
    return (t.left, t.right)


def term_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.index])
    out = frozenset()
    for c in term_children(t):
        out |= term_vars(c)
    return out


def term_var_occurrences(t) -> list:
    if isinstance(t, Var):
        return [t.index]
    out = []
    for c in term_children(t):
        out.extend(term_var_occurrences(c))
    return out


def term_params(t) -> frozenset:
    if isinstance(t, Param):
        return frozenset([t.index])
    out = frozenset()
    for c in term_children(t):
        out |= term_params(c)
    return out


def map_term(t, fn):
    """Rebuild ``t`` bottom-up, replacing each leaf ``v`` by ``fn(v)``."""
    if isinstance(t, (Identity, Var, Param)):
        return fn(t)
    if isinstance(t, Inverse):
        return Inverse(map_term(t.arg, fn))
    if isinstance(t, Conj):
        return Conj(map_term(t.base, fn), map_term(t.by, fn))
    return type(t)(map_term(t.left, fn), map_term(t.right, fn))


# formulas ---------------------------------------------------------------


class _FormulaBase:
    @cached_property
    def free_vars(self) -> frozenset:
        return _free_vars(self)

    @cached_property
    def params(self) -> frozenset:
        return _params(self)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Eq(_FormulaBase):
    left: Term
    right: Term


@dataclass(frozen=True)
class And(_FormulaBase):
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 2:
            raise ValueError("And needs at least two operands; use conjunction()")


@dataclass(frozen=True)
class Or(_FormulaBase):
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 2:
            raise ValueError("Or needs at least two operands; use disjunction()")


@dataclass(frozen=True)
class Not(_FormulaBase):
    arg: "Formula"


@dataclass(frozen=True)
class Implies(_FormulaBase):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll(_FormulaBase):
    var: int
    body: "Formula"


@dataclass(frozen=True)
class Exists(_FormulaBase):
    var: int
    body: "Formula"


Formula = Union[Eq, And, Or, Not, Implies, ForAll, Exists]
Quantifier = (ForAll, Exists)


def conjunction(parts):
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def disjunction(parts):
    parts = list(parts)
    if not parts:
        raise ValueError("empty disjunction")
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def forall(variables, body):
    for v in reversed(list(variables)):
        body = ForAll(v, body)
    return body


def exists(variables, body):
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def formula_children(f) -> tuple:
    if isinstance(f, Eq):
        return ()
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, Implies):
        return (f.left, f.right)
    return (f.body,)


def _free_vars(f):
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Quantifier):
        return f.body.free_vars - {f.var}
    out = frozenset()
    for c in formula_children(f):
        out |= c.free_vars
    return out


def _params(f):
    if isinstance(f, Eq):
        return term_params(f.left) | term_params(f.right)
    out = frozenset()
    for c in formula_children(f):
        out |= c.params
    return out


def canonical(f):
    """Rename bound variables to ``max(free)+1, +2, ...`` in binding order.

    Two formulas are alpha-equivalent iff their canonical forms are equal.
    """
    counter = [max(f.free_vars, default=0)]

    def walk(g, env):
        if isinstance(g, Eq):
            rename = lambda leaf: Var(env.get(leaf.index, leaf.index)) if isinstance(leaf, Var) else leaf
            return Eq(map_term(g.left, rename), map_term(g.right, rename))
        if isinstance(g, Quantifier):
            counter[0] += 1
            inner = dict(env)
            inner[g.var] = counter[0]
            return type(g)(counter[0], walk(g.body, inner))
        if isinstance(g, (And, Or)):
            return type(g)(tuple(walk(c, env) for c in g.args))
        if isinstance(g, Not):
            return Not(walk(g.arg, env))
        return Implies(walk(g.left, env), walk(g.right, env))

    return walk(f, {})


def alpha_equal(f, g) -> bool:
    return canonical(f) == canonical(g)


# rendering ---------------------------------------------------------------

# term contexts: 0 product operand (left), 1 power base / product right, 2 atom
def render_term(t, ctx: int = 0) -> str:
    if isinstance(t, Identity):
        return "1"
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Param):
        return f"p{t.index}"
    if isinstance(t, Comm):
        return f"[{render_term(t.left)}, {render_term(t.right)}]"
    if isinstance(t, Product):
        text = f"{render_term(t.left, 0)} * {render_term(t.right, 1)}"
        return f"({text})" if ctx >= 1 else text
    if isinstance(t, Inverse):
        text = f"{render_term(t.arg, 1)}^-1"
    else:
        text = f"{render_term(t.base, 1)}^{render_term(t.by, 2)}"
    return f"({text})" if ctx >= 2 else text


_LEVEL = {Implies: 1, Or: 2, And: 3, Not: 4, Eq: 5}


def render(f) -> str:
    """Canonical text of a formula.

    Quantifiers are parenthesized whenever they appear as an operand of a
    connective; nested same-kind connectives are parenthesized so that
    ``And``/``Or`` nesting survives a round trip.
    """
    return _render(f)


def _operand(f, min_level):
    text = _render(f)
    if isinstance(f, Quantifier) or _LEVEL[type(f)] < min_level:
        return f"({text})"
    return text


def _render(f):
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, ForAll):
        return f"A x{f.var}. {_render(f.body)}"
    if isinstance(f, Exists):
        return f"E x{f.var}. {_render(f.body)}"
    if isinstance(f, Not):
        return "~" + _operand(f.arg, _LEVEL[Not])
    if isinstance(f, Implies):
        # right associative: a -> b -> c is a -> (b -> c)
        return f"{_operand(f.left, _LEVEL[Or])} -> {_operand(f.right, _LEVEL[Implies])}"
    op = " & " if isinstance(f, And) else " | "
    level = _LEVEL[type(f)] + 1
    return op.join(_operand(c, level) for c in f.args)
