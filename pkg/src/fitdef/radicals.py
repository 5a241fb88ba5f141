"""Fitting subgroup, soluble radical, their oracles, bound profiles and Engel tests.

The default (elementwise) method uses that in a finite group an element
lies in the Fitting subgroup iff its normal closure is nilpotent, and in
the soluble radical iff its normal closure is soluble.  The oracles never
use that characterization: they enumerate every normal subgroup and join
the nilpotent (soluble) ones.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import OracleInfeasibleError
from .group import (
    FiniteGroup,
    Subgroup,
    closure,
    is_normal,
    normal_closure,
    subgroup_from_members,
    trivial_subgroup,
)
from .series import derived_length, nilpotency_class

ORACLE_BUDGET = 2 ** 20
PROFILE_SUBSET_BUDGET = 10 ** 6
PROFILE_SAMPLES = 10 ** 4


def _memo(G, key, compute):
    if key not in G._memo:
        G._memo[key] = compute()
    return G._memo[key]


@dataclass
class RadicalResult:
    """A characteristic subgroup with per-element witnesses.

    ``witness_classes[g]`` is the nilpotency class (Fitting) or derived
    length (radical) of the normal closure of ``g``, or ``None`` when that
    closure is not nilpotent / soluble.  ``invariant`` is the class or
    derived length of ``subgroup`` itself.
    """

    subgroup: Subgroup
    witness_classes: dict
    method: str
    kind: str
    invariant: int

    @property
    def max_witness(self) -> int:
        """Largest witness over members (0 if the subgroup is trivial)."""
        return max((self.witness_classes[g] for g in self.subgroup.members), default=0)


def _elementwise(G, kind):
    measure = nilpotency_class if kind == "fitting" else derived_length
    witness = {}
    for rep, members in zip(G.class_representatives, G.conjugacy_classes):
        value = measure(G, normal_closure(G, [rep]))
        for g in members:
            witness[g] = value
    chosen = [g for g in G.elements if witness[g] is not None]
    H = subgroup_from_members(G, chosen)
    if not is_normal(G, H):
        raise AssertionError(f"{kind} set is not normal")
    invariant = measure(G, H)
    if invariant is None:
        raise AssertionError(f"{kind} subgroup fails its defining property")
    return RadicalResult(H, witness, "elementwise", kind, invariant)


def fitting(G: FiniteGroup) -> RadicalResult:
    """``F(G)`` as the set of elements whose normal closure is nilpotent."""
    return _memo(G, "fitting", lambda: _elementwise(G, "fitting"))


def soluble_radical(G: FiniteGroup) -> RadicalResult:
    return _memo(G, "radical", lambda: _elementwise(G, "radical"))


def normal_subgroups(G: FiniteGroup, budget: int = ORACLE_BUDGET) -> list:
    """Every normal subgroup, as closures of unions of conjugacy classes.

    Unions always contain the identity class; the result is sorted by
    order, then by member list.
    """
    ident = G.class_index(G.identity)
    others = [c for i, c in enumerate(G.conjugacy_classes) if i != ident]
    if 2 ** len(others) > budget:
        raise OracleInfeasibleError(f"{2 ** len(others)} class unions exceed the oracle budget {budget}")

    def compute():
        found = {}
        for mask in range(2 ** len(others)):
            elems = [G.identity]
            for k, c in enumerate(others):
                if mask >> k & 1:
                    elems.extend(c)
            H = closure(G, elems)
            found.setdefault(H.members, H)
        return sorted(found.values(), key=lambda H: (H.order, sorted(H.members)))

    return _memo(G, "normal_subgroups", compute)


def _oracle(G, measure, budget):
    good = [H for H in normal_subgroups(G, budget) if measure(G, H) is not None]
    return closure(G, sorted(set().union(*(H.members for H in good)))) if good else trivial_subgroup(G)


def oracle_fitting(G: FiniteGroup, budget: int = ORACLE_BUDGET) -> Subgroup:
    """Join of all normal nilpotent subgroups."""
    return _oracle(G, nilpotency_class, budget)


def oracle_radical(G: FiniteGroup, budget: int = ORACLE_BUDGET) -> Subgroup:
    """Join of all normal soluble subgroups."""
    return _oracle(G, derived_length, budget)


@dataclass
class BoundProfile:
    """``d_of_m[i]``: largest class of a normal closure of ``<= m_values[i]`` elements of F(G)."""

    m_values: list
    d_of_m: list
    sampled: list = field(default_factory=list)
    sets_examined: list = field(default_factory=list)

    @property
    def is_nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.d_of_m, self.d_of_m[1:]))


def bound_profile(
    G: FiniteGroup,
    m_max: int,
    *,
    subset_budget: int = PROFILE_SUBSET_BUDGET,
    samples: int = PROFILE_SAMPLES,
    seed: int = 0,
) -> BoundProfile:
    """Finite bound profile ``m -> d(m)`` for the Fitting subgroup.

    The normal closure of a set ``A`` is generated by the conjugacy classes
    that ``A`` meets, so it suffices to range over sets of at most ``m``
    conjugacy classes inside ``F(G)``.  When the number of such sets
    exceeds ``subset_budget``, ``samples`` seeded random class sets are
    drawn instead and the entry is flagged as sampled.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    F = fitting(G).subgroup
    reps = [r for r in G.class_representatives if r in F.members and r != G.identity]
    rng = random.Random(seed)
    cache = {}

    def class_of_closure(combo):
        if combo not in cache:
            cache[combo] = nilpotency_class(G, normal_closure(G, combo))
        return cache[combo]

    profile = BoundProfile([], [])
    best = 0
    for m in range(1, m_max + 1):
        k = min(m, len(reps))
        count = math.comb(len(reps), k) if reps else 0
        if count <= subset_budget:
            combos = combinations(reps, k)
            sampled = False
        else:
            combos = (tuple(sorted(rng.sample(reps, k))) for _ in range(samples))
            sampled = True
        examined = 0
        for combo in combos:
            examined += 1
            best = max(best, class_of_closure(combo))
        profile.m_values.append(m)
        profile.d_of_m.append(best)
        profile.sampled.append(sampled)
        profile.sets_examined.append(examined)
    return profile


def _engel_terms(G):
    T = G.mul_table
    inv = G.inv_table
    x, y = np.meshgrid(np.arange(G.order), np.arange(G.order), indexing="ij")

    def comm(a, b):
        return T[T[inv[a], inv[b]], T[a, b]]

    return comm, x, y


def engel_degrees(G: FiniteGroup, n_max: int) -> np.ndarray:
    """Per pair ``(x, y)``: least ``n <= n_max`` with ``[x,_n y] = 1``, else 0."""
    comm, x, y = _engel_terms(G)
    out = np.zeros((G.order, G.order), dtype=np.int64)
    term = comm(x, y)
    for n in range(1, n_max + 1):
        hit = (term == G.identity) & (out == 0)
        out[hit] = n
        term = comm(term, y)
    return out


def is_engel(G: FiniteGroup, n: int) -> bool:
    degrees = engel_degrees(G, n)
    return bool(np.all(degrees > 0))


def engel_classify(G: FiniteGroup, n_max: int) -> Optional[int]:
    """Smallest ``n <= n_max`` such that ``G`` is ``n``-Engel, else ``None``."""
    degrees = engel_degrees(G, n_max)
    if np.any(degrees == 0):
        return None
    return int(degrees.max())
