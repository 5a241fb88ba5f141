"""Group words: left-normed commutators, derived words and Engel words.

A :class:`Word` is a tree over variables ``Var(0) .. Var(arity-1)``.  The
three recursive families used throughout the package are

* ``build_u(n)``: ``u_1 = [x1, x2]``, ``u_{n+1} = [u_n, x_{n+2}]``;
* ``build_v(n)``: ``v_1 = [x1, x2]``, ``v_{n+1} = [v_n(first half), v_n(second half)]``;
* ``build_engel(n)``: ``[x,_1 y] = [x, y]``, ``[x,_{n+1} y] = [[x,_n y], y]``.

Variables render 1-indexed (``Var(0)`` is ``x1``), matching the formula
grammar of :mod:`fitdef.logic`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence, Union

from .errors import ArityError
from .group import FiniteGroup


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Product:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Inverse:
    arg: "Node"


@dataclass(frozen=True)
class Conjugation:
    base: "Node"
    by: "Node"


@dataclass(frozen=True)
class Commutator:
    left: "Node"
    right: "Node"


Node = Union[Var, Product, Inverse, Conjugation, Commutator]


def _children(node):
    if isinstance(node, Var):
        return ()
    if isinstance(node, Inverse):
        return (node.arg,)
    if isinstance(node, Conjugation):
        return (node.base, node.by)
    return (node.left, node.right)


def variable_occurrences(node) -> list:
    """Variable indices in left-to-right leaf order (with repetition)."""
    if isinstance(node, Var):
        return [node.index]
    out = []
    for child in _children(node):
        out.extend(variable_occurrences(child))
    return out


@dataclass(frozen=True)
class Word:
    arity: int
    ast: Node

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be positive")
        bad = [i for i in variable_occurrences(self.ast) if not 0 <= i < self.arity]
        if bad:
            raise ValueError(f"variable index {bad[0]} out of range for arity {self.arity}")

    @property
    def is_linear(self) -> bool:
        """True when no variable occurs twice."""
        occ = variable_occurrences(self.ast)
        return len(occ) == len(set(occ))

    def __str__(self):
        return render_word(self)


def _shift(node, k):
    if isinstance(node, Var):
        return Var(node.index + k)
    if isinstance(node, Inverse):
        return Inverse(_shift(node.arg, k))
    if isinstance(node, Conjugation):
        return Conjugation(_shift(node.base, k), _shift(node.by, k))
    return type(node)(_shift(node.left, k), _shift(node.right, k))


def build_u(n: int) -> Word:
    """Left-normed commutator ``[x1, x2, ..., x_{n+1}]`` of arity ``n+1``."""
    if n < 1:
        raise ValueError("build_u needs n >= 1")
    ast = Commutator(Var(0), Var(1))
    for k in range(2, n + 1):
        ast = Commutator(ast, Var(k))
    return Word(n + 1, ast)


def build_v(n: int) -> Word:
    """Derived word of arity ``2**n``."""
    if n < 1:
        raise ValueError("build_v needs n >= 1")
    ast = Commutator(Var(0), Var(1))
    width = 2
    for _ in range(1, n):
        ast = Commutator(ast, _shift(ast, width))
        width *= 2
    return Word(width, ast)


def build_engel(n: int) -> Word:
    """Engel word ``[x,_n y]`` in the two variables ``x1, x2``."""
    if n < 1:
        raise ValueError("build_engel needs n >= 1")
    ast = Commutator(Var(0), Var(1))
    for _ in range(1, n):
        ast = Commutator(ast, Var(1))
    return Word(2, ast)


def _apply(G, node, a, b=None):
    if isinstance(node, Product):
        return G.mul(a, b)
    if isinstance(node, Conjugation):
        return G.conjugate(a, b)
    if isinstance(node, Commutator):
        return G.commutator(a, b)
    return G.inv(a)


def _eval(G, node, args):
    if isinstance(node, Var):
        return args[node.index]
    if isinstance(node, Inverse):
        return G.inv(_eval(G, node.arg, args))
    return _apply(G, node, _eval(G, _children(node)[0], args), _eval(G, _children(node)[1], args))


def eval_word(G: FiniteGroup, w: Word, args: Sequence[int]) -> int:
    if len(args) != w.arity:
        raise ArityError(f"word has arity {w.arity}, got {len(args)} arguments")
    return _eval(G, w.ast, args)


def word_image(G: FiniteGroup, w: Word, domains: Sequence[Sequence[int]]) -> dict:
    """All values of ``w`` with argument ``i`` ranging over ``domains[i]``.

    Returns a dict mapping each value to one argument tuple producing it.
    Linear words are evaluated bottom-up on value sets, which is exact
    because distinct subtrees share no variables; other words fall back to
    enumerating the full product of domains.
    """
    if len(domains) != w.arity:
        raise ArityError(f"word has arity {w.arity}, got {len(domains)} domains")
    domains = [list(dict.fromkeys(d)) for d in domains]
    if any(not d for d in domains):
        return {}
    if not w.is_linear:
        return word_image_bruteforce(G, w, domains)
    partial = _image(G, w.ast, domains)
    default = [d[0] for d in domains]
    out = {}
    for value, assign in partial.items():
        args = list(default)
        for i, g in assign:
            args[i] = g
        out[value] = tuple(args)
    return out


def _image(G, node, domains):
    # value -> tuple of (var, element) pairs, first provenance kept
    if isinstance(node, Var):
        return {g: ((node.index, g),) for g in domains[node.index]}
    if isinstance(node, Inverse):
        inv = G._inv
        return {inv[v]: p for v, p in _image(G, node.arg, domains).items()}
    left, right = _children(node)
    left_img = _image(G, left, domains)
    right_img = _image(G, right, domains)
    out = {}
    for a, pa in left_img.items():
        for b, pb in right_img.items():
            v = _apply(G, node, a, b)
            if v not in out:
                out[v] = pa + pb
    return out


def word_image_bruteforce(G: FiniteGroup, w: Word, domains: Sequence[Sequence[int]]) -> dict:
    out = {}
    for args in cartesian(*domains):
        v = _eval(G, w.ast, args)
        if v not in out:
            out[v] = tuple(args)
    return out


def vanishes_on(G: FiniteGroup, w: Word) -> bool:
    """True iff ``w`` is a law of ``G`` (evaluates to 1 on every tuple)."""
    return set(word_image(G, w, [G.elements] * w.arity)) == {G.identity}


def render_word(w: Word) -> str:
    """Render in the formula-grammar term syntax, e.g. ``[[x1, x2], x3]``."""
    return _render(w.ast, 0)


# precedence: 0 = product context, 1 = conjugation base, 2 = atom required
def _render(node, ctx):
    if isinstance(node, Var):
        return f"x{node.index + 1}"
    if isinstance(node, Commutator):
        return f"[{_render(node.left, 0)}, {_render(node.right, 0)}]"
    if isinstance(node, Product):
        text = f"{_render(node.left, 0)} * {_render(node.right, 1)}"
        return f"({text})" if ctx >= 1 else text
    if isinstance(node, Inverse):
        text = f"{_render(node.arg, 1)}^-1"
    else:
        text = f"{_render(node.base, 1)}^{_render(node.by, 2)}"
    return f"({text})" if ctx >= 2 else text
