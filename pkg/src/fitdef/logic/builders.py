"""Formulas defining the Fitting subgroup and soluble radical, and their checkers.

Variable layout of the built formulas:

* ``build_phi_defining(n)``: ``A x1. ... A x{n+1}. u_n(p0^x1, ..., p0^x{n+1}) = 1``
* ``build_psi_defining(n)``: the same with ``v_n`` and ``2**n`` variables
* ``build_phi_nm(n, m)``: free ``x1..xm``; bound ``x{m+1}..x{m+n+1}``;
  one conjunct ``u_n(x{s(1)}^x{m+1}, ..., x{s(n+1)}^x{m+n+1}) = 1`` per map
  ``s: {1..n+1} -> {1..m}``, in lexicographic order of ``(s(1), ..., s(n+1))``.
"""

from __future__ import annotations

from itertools import combinations
from itertools import product as cartesian

from ..errors import ArityError, FormulaBudgetError
from ..group import FiniteGroup
from ..radicals import fitting
from .. import words as W
from .evaluate import EvalResult
from .syntax import Comm, Conj, Eq, Identity, Inverse, Param, Product, Var, conjunction, forall

PHI_NM_BUDGET = 10 ** 5


def word_to_term(w: W.Word, substitution):
    """Replace ``Var(i)`` of a word by ``substitution[i]`` (a logic term)."""
    if len(substitution) != w.arity:
        raise ArityError(f"word has arity {w.arity}, got {len(substitution)} terms")

    def walk(node):
        if isinstance(node, W.Var):
            return substitution[node.index]
        if isinstance(node, W.Inverse):
            return Inverse(walk(node.arg))
        if isinstance(node, W.Conjugation):
            return Conj(walk(node.base), walk(node.by))
        if isinstance(node, W.Product):
            return Product(walk(node.left), walk(node.right))
        return Comm(walk(node.left), walk(node.right))

    return walk(w.ast)


def _defining(w):
    variables = list(range(1, w.arity + 1))
    body = Eq(word_to_term(w, [Conj(Param(0), Var(i)) for i in variables]), Identity())
    return forall(variables, body)


def build_phi_defining(n: int):
    """Holds at ``a`` iff the normal closure of ``a`` is nilpotent of class ``<= n``."""
    if n < 1:
        raise ValueError("build_phi_defining needs n >= 1")
    return _defining(W.build_u(n))


def build_psi_defining(n: int):
    """Holds at ``a`` iff the normal closure of ``a`` has derived length ``<= n``."""
    if n < 1:
        raise ValueError("build_psi_defining needs n >= 1")
    return _defining(W.build_v(n))


def build_phi_nm(n: int, m: int, budget: int = PHI_NM_BUDGET):
    if n < 1 or m < 1:
        raise ValueError("build_phi_nm needs n, m >= 1")
    count = m ** (n + 1)
    if count > budget:
        raise FormulaBudgetError(
            f"phi_{{{n},{m}}} has {count} conjuncts (budget {budget}); use check_phi_nm_lazy"
        )
    u = W.build_u(n)
    bound = list(range(m + 1, m + n + 2))
    conjuncts = [
        Eq(word_to_term(u, [Conj(Var(s + 1), Var(y)) for s, y in zip(sigma, bound)]), Identity())
        for sigma in cartesian(range(m), repeat=n + 1)
    ]
    return forall(bound, conjunction(conjuncts))


def check_phi_nm_lazy(
    G: FiniteGroup, n: int, m: int, b, *, strategy: str = "image", prune: bool = True
) -> EvalResult:
    """Decide ``phi_{n,m}(b)`` without materializing its conjunction.

    ``strategy="enumerate"`` scans maps ``s`` and conjugator tuples in
    order, each conjugator over a transversal of the centralizer of the
    element it conjugates (all of ``G`` when ``prune`` is false), stopping
    at the first nontrivial value.  ``strategy="image"`` (default) computes
    the value set of the left-normed commutator over ``C^{n+1}``, where
    ``C`` is the union of the conjugacy classes of the ``b_i``; the union
    over all ``s`` of the conjugator products is exactly that domain.

    ``n = 0`` is accepted and means every ``b_i`` is trivial.  A false
    result carries the conjugators as ``witness`` (keyed by the bound
    variable indices ``m+1 ..``) and the failing map as ``detail["sigma"]``
    (0-indexed positions into ``b``).
    """
    b = tuple(b)
    if len(b) != m:
        raise ArityError(f"expected {m} elements, got {len(b)}")
    if n < 0:
        raise ValueError("n must be >= 0")
    e = G.identity
    if n == 0:
        for i, x in enumerate(b):
            if x != e:
                return EvalResult(False, {m + 1: e}, i + 1, {"sigma": (i,)})
        return EvalResult(True, None, m)
    if strategy == "image":
        return _phi_nm_image(G, n, m, b)
    if strategy != "enumerate":
        raise ValueError(f"unknown strategy {strategy!r}")

    domains = [tuple(G.conjugating_transversal(x).values()) if prune else G.elements for x in b]
    count = 0
    for sigma in cartesian(range(m), repeat=n + 1):
        for ys in cartesian(*(domains[s] for s in sigma)):
            count += 1
            value = G.conjugate(b[sigma[0]], ys[0])
            for s, y in zip(sigma[1:], ys[1:]):
                value = G.commutator(value, G.conjugate(b[s], y))
            if value != e:
                witness = {m + 1 + j: y for j, y in enumerate(ys)}
                return EvalResult(False, witness, count, {"sigma": sigma})
    return EvalResult(True, None, count)


def _phi_nm_image(G, n, m, b):
    e = G.identity
    source = {}
    for i, x in enumerate(b):
        for c, y in G.conjugating_transversal(x).items():
            source.setdefault(c, (i, y))
    domain = list(source)
    count = 0
    values = {c: (c,) for c in domain}
    for _ in range(n):
        nxt = {}
        for v, prov in values.items():
            for c in domain:
                w = G.commutator(v, c)
                if w not in nxt:
                    nxt[w] = prov + (c,)
        count += len(values) * len(domain)
        values = nxt
        if len(values) == 1 and e in values:
            return EvalResult(True, None, count)
    bad = next((prov for v, prov in values.items() if v != e), None)
    if bad is None:
        return EvalResult(True, None, count)
    sigma = tuple(source[c][0] for c in bad)
    witness = {m + 1 + j: source[c][1] for j, c in enumerate(bad)}
    return EvalResult(False, witness, count, {"sigma": sigma})


def phi_n1_set(G: FiniteGroup, n: int) -> frozenset:
    """Elements satisfying ``phi_{n,1}``, decided once per conjugacy class."""
    out = set()
    for rep, members in zip(G.class_representatives, G.conjugacy_classes):
        if check_phi_nm_lazy(G, n, 1, (rep,)).truth:
            out.update(members)
    return frozenset(out)


def check_Tp(G: FiniteGroup, p: int) -> EvalResult:
    """Truncated check of the theory ``T_p`` (Fitting subgroup of class ``<= p``).

    Only the sentence with ``n = max(1, n*)`` and ``m = p + 1`` is checked,
    where ``n*`` is the largest nilpotency class of a nilpotent normal
    closure of a single element.  The antecedent then holds exactly on
    ``F(G)``.  The consequent ``phi_{p,m}(x_1..x_m)`` depends only on the
    set of conjugacy classes the ``x_i`` meet and is inherited by subsets,
    so it is checked once per set of ``min(m, k)`` classes among the ``k``
    classes satisfying the antecedent.  The record of this truncation is
    in ``detail``.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    n_star = fitting(G).max_witness
    n = max(1, n_star)
    m = p + 1
    antecedent = phi_n1_set(G, n)
    reps = [r for r in G.class_representatives if r in antecedent]
    k = min(m, len(reps))
    detail = {
        "truncated": True,
        "n_star": n_star,
        "n": n,
        "m": m,
        "antecedent_size": len(antecedent),
        "antecedent_classes": len(reps),
    }
    examined = 0
    count = 0
    for combo in combinations(reps, k):
        examined += 1
        b = combo + (combo[-1],) * (m - k)
        res = check_phi_nm_lazy(G, p, m, b)
        count += res.tuples_examined
        if not res.truth:
            detail["class_sets_examined"] = examined
            detail["consequent_witness"] = res.witness
            detail["sigma"] = res.detail.get("sigma")
            return EvalResult(False, {i + 1: x for i, x in enumerate(b)}, count, detail)
    detail["class_sets_examined"] = examined
    return EvalResult(True, None, count, detail)
