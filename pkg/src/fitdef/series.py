"""Commutator subgroups and the lower central / derived series.

Every series is computed along two independent routes:

* directly, by repeated :func:`commutator_subgroup` (``N^{k+1} = [N^k, N]``,
  ``N^{(k+1)} = [N^{(k)}, N^{(k)}]``);
* from word values: the ``k``-th term is generated by the values of
  ``u_k`` (resp. ``v_k``) on conjugates of the generators of ``N``.

The two must agree term by term; disagreement raises
:class:`~fitdef.errors.SeriesMismatchError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import NotNormalError, SeriesMismatchError
from .group import FiniteGroup, Subgroup, closure, is_normal
from .words import build_u, build_v, word_image

LOWER_CENTRAL = "lower-central"
DERIVED = "derived"


def _conjugates_of(G, elements):
    seen = {}
    for b in elements:
        for c in G.conjugacy_classes[G.class_index(b)]:
            seen.setdefault(c, None)
    return list(seen)


def _require_normal(G, *subgroups):
    for H in subgroups:
        if H.parent is not G:
            raise ValueError("subgroup belongs to a different group")
        if not is_normal(G, H):
            raise NotNormalError("subgroup is not normal in G")


def commutator_generators(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list:
    """``{[a^s, b^t] : a in gens(H), b in gens(K), s, t in G}``.

    ``a^s`` only depends on the coset of the centralizer of ``a`` that
    contains ``s``, so it suffices to range over the conjugacy classes of
    the generators.
    """
    left = _conjugates_of(G, H.generators)
    right = _conjugates_of(G, K.generators)
    out = {}
    for x in left:
        for y in right:
            out.setdefault(G.commutator(x, y), None)
    return list(out)


def commutator_subgroup(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """``[H, K]`` for normal subgroups ``H`` and ``K`` from their generators."""
    _require_normal(G, H, K)
    return closure(G, commutator_generators(G, H, K))


def commutator_subgroup_pairs(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """``[H, K]`` as the closure of every commutator ``[h, k]``; no normality needed."""
    hs, ks = sorted(H.members), sorted(K.members)
    return closure(G, (G.commutator(h, k) for h in hs for k in ks))


@dataclass
class SeriesReport:
    """Terms ``N = terms[0] >= terms[1] >= ...`` of a descending series.

    If the series reaches the trivial subgroup it stops there and
    ``class_or_length`` is the index of that last term.  If it stalls above
    the trivial subgroup the repeated term is appended once,
    ``stabilized`` is true and ``class_or_length`` is ``None``.
    """

    terms: list
    kind: str
    stabilized: bool
    class_or_length: Optional[int]
    cross_checked: bool = False
    word_terms: list = field(default_factory=list, repr=False)

    @property
    def is_nilpotent(self) -> bool:
        return self.kind == LOWER_CENTRAL and self.class_or_length is not None

    @property
    def is_soluble(self) -> bool:
        return self.kind == DERIVED and self.class_or_length is not None


def word_series_term(G: FiniteGroup, N: Subgroup, k: int, kind: str) -> Subgroup:
    """The ``k``-th series term of ``N`` generated by word values (``k >= 1``)."""
    conj = _conjugates_of(G, N.generators)
    w = build_u(k) if kind == LOWER_CENTRAL else build_v(k)
    return closure(G, sorted(word_image(G, w, [conj] * w.arity)))


def _series(G, N, kind, cross_check):
    _require_normal(G, N)
    terms = [N]
    word_terms = []
    if N.is_trivial:
        return SeriesReport(terms, kind, False, 0, cross_check, word_terms)
    for k in range(1, N.order + 1):
        prev = terms[-1]
        other = N if kind == LOWER_CENTRAL else prev
        nxt = commutator_subgroup(G, prev, other)
        if cross_check:
            via_words = word_series_term(G, N, k, kind)
            word_terms.append(via_words)
            if via_words != nxt:
                raise SeriesMismatchError(
                    f"{kind} term {k}: direct order {nxt.order}, word-generated order {via_words.order}",
                    index=k, direct=nxt, words=via_words,
                )
        terms.append(nxt)
        if nxt.is_trivial:
            return SeriesReport(terms, kind, False, k, cross_check, word_terms)
        if nxt == prev:
            return SeriesReport(terms, kind, True, None, cross_check, word_terms)
    raise AssertionError("series failed to stabilize within |N| steps")


def lower_central_series(G: FiniteGroup, N: Subgroup, cross_check: bool = True) -> SeriesReport:
    return _series(G, N, LOWER_CENTRAL, cross_check)


def derived_series(G: FiniteGroup, N: Subgroup, cross_check: bool = True) -> SeriesReport:
    return _series(G, N, DERIVED, cross_check)


def nilpotency_class(G: FiniteGroup, N: Subgroup, cross_check: bool = False) -> Optional[int]:
    """Least ``c`` with ``N^c`` trivial (0 for the trivial subgroup), else ``None``."""
    return lower_central_series(G, N, cross_check).class_or_length


def derived_length(G: FiniteGroup, N: Subgroup, cross_check: bool = False) -> Optional[int]:
    return derived_series(G, N, cross_check).class_or_length
