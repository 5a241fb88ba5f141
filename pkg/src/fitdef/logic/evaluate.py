"""Bounded-quantifier evaluation of formulas in a finite group.

Consecutive quantifiers of the same kind form a *block*, enumerated
jointly with the first (outermost) variable varying slowest.  Three
strategies are available:

``"naive"``
    every block variable ranges over the whole group, in index order.
``"coset"``
    a variable whose every occurrence is as a conjugating exponent
    ``t^x`` of terms ``t`` fixed on entry to the block only ranges over
    one representative per right coset of the joint centralizer of those
    terms (``t^x`` depends on nothing else).  A variable that does not
    occur at all takes only the identity.
``"auto"`` (default)
    like ``"coset"``, except that a universal block whose body is a
    conjunction of equations ``s = t`` in which ``t`` does not mention the
    block variables and ``s`` mentions each of them at most once is
    decided from the *set* of values of ``s``, computed bottom-up; an
    existential block over a single such equation likewise.  Because the
    block variables are split between disjoint subterms, the value set of
    a node is exactly the image of its operation on its children's value
    sets.

All strategies return the same truth value.  Witnesses (a counterexample
to a universal block, or an instance of an existential one) are
deterministic for a given strategy but may differ between strategies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Optional

from ..errors import ArityError, UnboundVariableError
from ..group import FiniteGroup
from .syntax import (
    And,
    Conj,
    Eq,
    ForAll,
    Identity,
    Implies,
    Inverse,
    Not,
    Or,
    Param,
    Product,
    Quantifier,
    Var,
    formula_children,
    term_children,
    term_var_occurrences,
    term_vars,
)

STRATEGIES = ("auto", "coset", "naive")


@dataclass
class EvalResult:
    """Outcome of evaluating a formula.

    ``witness`` maps variable indices to elements for the outermost
    quantifier block: a counterexample when a universal block is false, an
    instance when an existential block is true, otherwise ``None``.
    """

    truth: bool
    witness: Optional[dict]
    tuples_examined: int
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.truth


def _bound_inside(f) -> frozenset:
    if isinstance(f, Eq):
        return frozenset()
    out = frozenset([f.var]) if isinstance(f, Quantifier) else frozenset()
    for c in formula_children(f):
        out |= _bound_inside(c)
    return out


def _term_occurrences(t, v, out):
    if isinstance(t, Conj) and isinstance(t.by, Var) and t.by.index == v:
        out.append(("conj", t.base))
        _term_occurrences(t.base, v, out)
        return
    if isinstance(t, Var):
        if t.index == v:
            out.append(("bare", None))
        return
    for c in term_children(t):
        _term_occurrences(c, v, out)


def _formula_occurrences(f, v, out):
    if isinstance(f, Eq):
        _term_occurrences(f.left, v, out)
        _term_occurrences(f.right, v, out)
    elif isinstance(f, Quantifier):
        if f.var != v:
            _formula_occurrences(f.body, v, out)
    else:
        for c in formula_children(f):
            _formula_occurrences(c, v, out)


def split_block(f):
    """``(kind, variables, body)`` for the maximal same-kind block at ``f``."""
    kind = type(f)
    variables = []
    body = f
    while type(body) is kind and body.var not in variables:
        variables.append(body.var)
        body = body.body
    return kind, variables, body


class _Evaluator:
    def __init__(self, G: FiniteGroup, params, strategy):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
        self.G = G
        self.params = tuple(params)
        self.strategy = strategy
        self.count = 0
        self._terms = {}
        self._formulas = {}
        self._plans = {}
        self._coset_cache = {}

    # terms -------------------------------------------------------------

    def term(self, t):
        key = id(t)
        hit = self._terms.get(key)
        if hit is not None:
            return hit[1]
        fn = self._compile_term(t)
        self._terms[key] = (t, fn)
        return fn

    def _compile_term(self, t):
        G = self.G
        rows, inv = G._rows, G._inv
        if isinstance(t, Identity):
            e = G.identity
            return lambda env: e
        if isinstance(t, Var):
            i = t.index
            return lambda env: env[i]
        if isinstance(t, Param):
            if t.index >= len(self.params):
                raise ArityError(f"parameter p{t.index} has no value")
            v = self.params[t.index]
            return lambda env: v
        if isinstance(t, Inverse):
            a = self.term(t.arg)
            return lambda env: inv[a(env)]
        if isinstance(t, Product):
            a, b = self.term(t.left), self.term(t.right)
            return lambda env: rows[a(env)][b(env)]
        if isinstance(t, Conj):
            a, b = self.term(t.base), self.term(t.by)

            def conj(env):
                h = b(env)
                return rows[rows[inv[h]][a(env)]][h]

            return conj
        a, b = self.term(t.left), self.term(t.right)

        def comm(env):
            x, y = a(env), b(env)
            return rows[rows[inv[x]][inv[y]]][rows[x][y]]

        return comm

    # formulas ----------------------------------------------------------

    def formula(self, f):
        key = id(f)
        hit = self._formulas.get(key)
        if hit is not None:
            return hit[1]
        fn = self._compile_formula(f)
        self._formulas[key] = (f, fn)
        return fn

    def _compile_formula(self, f):
        if isinstance(f, Eq):
            a, b = self.term(f.left), self.term(f.right)
            return lambda env: a(env) == b(env)
        if isinstance(f, And):
            parts = [self.formula(c) for c in f.args]
            return lambda env: all(p(env) for p in parts)
        if isinstance(f, Or):
            parts = [self.formula(c) for c in f.args]
            return lambda env: any(p(env) for p in parts)
        if isinstance(f, Not):
            a = self.formula(f.arg)
            return lambda env: not a(env)
        if isinstance(f, Implies):
            a, b = self.formula(f.left), self.formula(f.right)
            return lambda env: (not a(env)) or b(env)
        return lambda env: self.block(f, env)[0]

    # quantifier blocks -------------------------------------------------

    def _plan(self, f):
        key = id(f)
        hit = self._plans.get(key)
        if hit is not None:
            return hit[1]
        kind, variables, body = split_block(f)
        plan = {"kind": kind, "vars": variables, "body": body, "image": None, "bases": None}
        if self.strategy == "auto":
            plan["image"] = self._image_plan(kind, variables, body)
        if self.strategy in ("auto", "coset"):
            plan["bases"] = self._coset_plan(variables, body)
        self._plans[key] = (f, plan)
        return plan

    def _coset_plan(self, variables, body):
        closed_against = set(variables) | _bound_inside(body)
        bases = []
        for v in variables:
            occ = []
            _formula_occurrences(body, v, occ)
            if not occ:
                bases.append(())
            elif all(kind == "conj" and not (term_vars(base) & closed_against) for kind, base in occ):
                unique = list(dict.fromkeys(base for _, base in occ))
                bases.append(tuple(self.term(b) for b in unique))
            else:
                bases.append(None)
        return bases

    def _image_plan(self, kind, variables, body):
        block = set(variables)
        if kind is ForAll:
            eqs = body.args if isinstance(body, And) else (body,)
        else:
            eqs = (body,)
        if not all(isinstance(e, Eq) for e in eqs):
            return None
        plans = []
        for e in eqs:
            left_vars, right_vars = term_vars(e.left) & block, term_vars(e.right) & block
            if left_vars and right_vars:
                return None
            side, other = (e.left, e.right) if left_vars or not right_vars else (e.right, e.left)
            occ = [v for v in term_var_occurrences(side) if v in block]
            if len(occ) != len(set(occ)):
                return None
            plans.append((self._image_fn(side, block), self.term(other)))
        return plans

    def _image_fn(self, t, block):
        G = self.G
        if not (term_vars(t) & block):
            fn = self.term(t)
            return lambda env: {fn(env): ()}
        if isinstance(t, Var):
            v = t.index
            return lambda env: {g: ((v, g),) for g in G.elements}
        if isinstance(t, Conj) and isinstance(t.by, Var) and t.by.index in block and not (term_vars(t.base) & block):
            base, y = self.term(t.base), t.by.index
            return lambda env: {c: ((y, s),) for c, s in G.conjugating_transversal(base(env)).items()}
        if isinstance(t, Inverse):
            inner = self._image_fn(t.arg, block)
            inv = G._inv
            return lambda env: {inv[v]: p for v, p in inner(env).items()}
        left = self._image_fn(term_children(t)[0], block)
        right = self._image_fn(term_children(t)[1], block)
        if isinstance(t, Product):
            op = G.mul
        elif isinstance(t, Conj):
            op = G.conjugate
        else:
            op = G.commutator

        def combine(env):
            a_img, b_img = left(env), right(env)
            self.count += len(a_img) * len(b_img)
            out = {}
            for a, pa in a_img.items():
                for b, pb in b_img.items():
                    v = op(a, b)
                    if v not in out:
                        out[v] = pa + pb
            return out

        return combine

    def _domain(self, bases, env):
        G = self.G
        if bases is None:
            return G.elements
        if not bases:
            return (G.identity,)
        values = tuple(b(env) for b in bases)
        if len(values) == 1:
            return tuple(G.conjugating_transversal(values[0]).values())
        hit = self._coset_cache.get(values)
        if hit is None:
            reps = {}
            for g in G.elements:
                reps.setdefault(tuple(G.conjugate(c, g) for c in values), g)
            hit = self._coset_cache[values] = tuple(reps.values())
        return hit

    def block(self, f, env):
        """Decide the block rooted at ``f``; returns ``(truth, witness)``."""
        plan = self._plan(f)
        variables = plan["vars"]
        universal = plan["kind"] is ForAll
        if plan["image"] is not None:
            return self._block_by_image(plan, env, universal)
        body = self.formula(plan["body"])
        bases = plan["bases"] or [None] * len(variables)
        domains = [self._domain(b, env) for b in bases]
        local = dict(env)
        for combo in cartesian(*domains):
            self.count += 1
            local.update(zip(variables, combo))
            if body(local) != universal:
                return (not universal), dict(zip(variables, combo))
        return universal, None

    def _block_by_image(self, plan, env, universal):
        e = self.G.identity
        variables = plan["vars"]
        for image_fn, target_fn in plan["image"]:
            target = target_fn(env)
            image = image_fn(env)
            self.count += 1
            if universal:
                for value, prov in image.items():
                    if value != target:
                        witness = dict.fromkeys(variables, e)
                        witness.update(prov)
                        return False, witness
            else:
                prov = image.get(target)
                if prov is None:
                    return False, None
                witness = dict.fromkeys(variables, e)
                witness.update(prov)
                return True, witness
        return True, None


def evaluate(G: FiniteGroup, f, params=(), assignment=None, *, strategy: str = "auto") -> EvalResult:
    """Evaluate ``f`` in ``G`` with parameters and an assignment of its free variables."""
    env = dict(assignment or {})
    missing = sorted(f.free_vars - set(env))
    if missing:
        raise UnboundVariableError(f"free variable x{missing[0]} is unassigned")
    if f.params and max(f.params) >= len(params):
        raise ArityError(f"formula uses p{max(f.params)} but only {len(params)} parameter(s) given")
    ev = _Evaluator(G, params, strategy)
    if isinstance(f, Quantifier):
        truth, witness = ev.block(f, env)
    else:
        truth, witness = ev.formula(f)(env), None
    return EvalResult(bool(truth), witness, ev.count)


def definable_set(G: FiniteGroup, f, *, strategy: str = "auto", by_class: bool = True) -> frozenset:
    """``{a : G |= f(a)}`` for a formula whose only parameter is ``p0``.

    A formula without other parameters defines a set invariant under
    automorphisms, in particular under conjugation, so by default only one
    element per conjugacy class is evaluated.
    """
    if f.free_vars:
        raise ArityError(f"formula has free variables {sorted(f.free_vars)}; expected only p0")
    if not f.params <= {0}:
        raise ArityError("formula must have exactly one parameter slot p0")
    if not by_class:
        return frozenset(a for a in G.elements if evaluate(G, f, (a,), strategy=strategy).truth)
    out = set()
    for rep, members in zip(G.class_representatives, G.conjugacy_classes):
        if evaluate(G, f, (rep,), strategy=strategy).truth:
            out.update(members)
    return frozenset(out)
