"""Dense finite groups, subgroups and closure machinery.

Elements of a :class:`FiniteGroup` are the integers ``0 .. order-1``.  The
whole multiplication table is precomputed, so every product, inverse,
commutator and conjugate is a constant-time lookup.

Permutations compose left to right: ``(a*b)[i] == b[a[i]]`` (apply ``a``
first).  Conjugation is ``g^h = h^-1 g h`` and ``[g, h] = g^-1 h^-1 g h``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GroupConstructionError, NotASubgroupError, OrderLimitError

DEFAULT_MAX_ORDER = 5040
EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 256
ASSOCIATIVITY_SAMPLES = 10_000


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Parameters
    ----------
    mul_table : array-like of shape (n, n)
        ``mul_table[a][b]`` is the index of ``a*b``.
    labels : sequence of str, optional
        Display strings, one per element.
    name : str, optional
    check : bool
        Validate the group axioms (Latin square, identity, inverses,
        associativity).  Associativity is checked exhaustively up to order
        256 and on 10,000 seeded random triples above that.
    """

    def __init__(self, mul_table, labels=None, name=None, *, check=True):
        table = np.array(mul_table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupConstructionError("multiplication table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupConstructionError("table entries must lie in 0..order-1")
        if check:
            _check_latin(table)
        identity = _find_identity(table)
        inv = np.argmax(table == identity, axis=1)
        if check:
            if not np.all(table[np.arange(n), inv] == identity):
                raise GroupConstructionError("some element has no inverse")
            _check_associative(table)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise GroupConstructionError("need exactly one label per element")

        table.setflags(write=False)
        inv.setflags(write=False)
        self.order = n
        self.mul_table = table
        self.identity = int(identity)
        self.inv_table = inv
        self.labels = labels
        self.name = name
        self._rows = table.tolist()
        self._inv = inv.tolist()
        self._memo = {}

    def __repr__(self):
        name = self.name or "FiniteGroup"
        return f"<{name} of order {self.order}>"

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels is not None else str(g)

    # element arithmetic --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        rows, inv = self._rows, self._inv
        return rows[rows[inv[a]][inv[b]]][rows[a][b]]

    def conjugate(self, g: int, h: int) -> int:
        """``g^h = h^-1 g h``."""
        rows = self._rows
        return rows[rows[self._inv[h]][g]][h]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self._inv[g], -k
        result, base = self.identity, g
        while k:
            if k & 1:
                result = self._rows[result][base]
            base = self._rows[base][base]
            k >>= 1
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self._rows[x][g]
            k += 1
        return k

    # cached structure ----------------------------------------------------

    @cached_property
    def generators(self) -> tuple:
        """A small generating set, chosen greedily in index order."""
        return closure(self, range(self.order)).generators

    @cached_property
    def is_abelian_group(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    @cached_property
    def _classes(self):
        # class index per element, class rep list, and for every element a
        # conjugator y with rep^y == element
        n = self.order
        class_of = [-1] * n
        from_rep = [0] * n
        reps, members = [], []
        gens = self.generators
        for g in range(n):
            if class_of[g] >= 0:
                continue
            idx = len(reps)
            reps.append(g)
            class_of[g] = idx
            from_rep[g] = self.identity
            orbit = [g]
            queue = deque([g])
            while queue:
                x = queue.popleft()
                for s in gens:
                    y = self.conjugate(x, s)
                    if class_of[y] < 0:
                        class_of[y] = idx
                        from_rep[y] = self._rows[from_rep[x]][s]
                        orbit.append(y)
                        queue.append(y)
            members.append(tuple(sorted(orbit)))
        return class_of, from_rep, tuple(reps), tuple(members)

    @property
    def conjugacy_classes(self) -> tuple:
        """Classes as sorted tuples, ordered by smallest member."""
        return self._classes[3]

    @property
    def class_representatives(self) -> tuple:
        return self._classes[2]

    def class_index(self, g: int) -> int:
        return self._classes[0][g]

    def conjugator(self, g: int, target: int) -> int:
        """Return some ``y`` with ``g^y == target``; both must be conjugate."""
        class_of, from_rep, _, _ = self._classes
        if class_of[g] != class_of[target]:
            raise ValueError(f"{g} and {target} are not conjugate")
        return self._rows[self._inv[from_rep[g]]][from_rep[target]]

    def conjugating_transversal(self, g: int) -> dict:
        """Map each conjugate ``c`` of ``g`` to one ``y`` with ``g^y == c``.

        The values form a right transversal of the centralizer of ``g``.
        """
        class_of, from_rep, _, members = self._classes
        back = self._inv[from_rep[g]]
        rows = self._rows
        return {c: rows[back][from_rep[c]] for c in members[class_of[g]]}

    def is_identity(self, g: int) -> bool:
        return g == self.identity


def _find_identity(table):
    n = table.shape[0]
    ar = np.arange(n)
    hits = np.nonzero(np.all(table == ar, axis=1) & np.all(table.T == ar, axis=1))[0]
    if hits.size == 0:
        raise GroupConstructionError("table has no two-sided identity")
    return int(hits[0])


def _check_latin(table):
    n = table.shape[0]
    ar = np.arange(n)
    if not (np.all(np.sort(table, axis=1) == ar) and np.all(np.sort(table, axis=0) == ar[:, None])):
        raise GroupConstructionError("table is not a Latin square")


def _check_associative(table, seed=0):
    n = table.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            # (a*b)*c versus a*(b*c) over all b, c
            if not np.array_equal(table[table[a]], table[a][table]):
                raise GroupConstructionError("table is not associative")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
    if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
        raise GroupConstructionError("table is not associative")


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent``: membership set plus generators.

    The membership set is the source of truth: two subgroups are equal iff
    they live in the same group and have the same members.
    """

    parent: FiniteGroup
    members: frozenset
    generators: tuple

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, g):
        return g in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __le__(self, other):
        return self.parent is other.parent and self.members <= other.members

    def __repr__(self):
        return f"<Subgroup of order {len(self.members)} in {self.parent!r}>"

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def sorted_members(self) -> list:
        return sorted(self.members)


@dataclass(frozen=True)
class PermutationSpec:
    """Generators of a permutation group as 0-indexed image arrays."""

    degree: int
    generators: tuple

    def __post_init__(self):
        if self.degree < 1:
            raise GroupConstructionError("degree must be positive")
        gens = tuple(tuple(int(i) for i in g) for g in self.generators)
        target = list(range(self.degree))
        for g in gens:
            if len(g) != self.degree or sorted(g) != target:
                raise GroupConstructionError(f"generator {list(g)} is not a bijection on 0..{self.degree - 1}")
        object.__setattr__(self, "generators", gens)


# closures -----------------------------------------------------------------


def _generate(G, gens):
    rows = G._rows
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def closure(G: FiniteGroup, A: Iterable[int]) -> Subgroup:
    """The subgroup generated by ``A``.

    The recorded generators are the elements of ``A`` (in iteration order)
    that were not already in the subgroup generated by their predecessors.
    """
    gens = []
    members = {G.identity}
    for a in A:
        if a not in members:
            gens.append(a)
            members = _generate(G, gens)
    return Subgroup(G, frozenset(members), tuple(gens))


def subgroup_from_members(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Wrap an element set known (or claimed) to be a subgroup."""
    members = frozenset(members)
    H = closure(G, sorted(members))
    if H.members != members:
        raise NotASubgroupError("element set is not closed under multiplication")
    return H


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset([G.identity]), ())


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(G.elements), tuple(G.generators))


def conjugacy_class(G: FiniteGroup, g: int) -> frozenset:
    return frozenset(G.conjugacy_classes[G.class_index(g)])


def normal_closure(G: FiniteGroup, A: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup containing ``A``."""
    H = closure(G, A)
    while True:
        extra = next(
            (y for h in H.generators for s in G.generators
             if (y := G.conjugate(h, s)) not in H.members),
            None,
        )
        if extra is None:
            return H
        H = closure(G, H.generators + (extra,))


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    T = G.mul_table
    members = np.nonzero(T[g, :] == T[:, g])[0].tolist()
    return closure(G, members)


def center(G: FiniteGroup) -> Subgroup:
    T = G.mul_table
    members = np.nonzero(np.all(T == T.T, axis=1))[0].tolist()
    return closure(G, members)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(G.conjugate(h, s) in H.members for h in H.generators for s in G.generators)


def is_abelian(H: Subgroup) -> bool:
    G = H.parent
    gens = H.generators
    return all(G.mul(a, b) == G.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


# constructions --------------------------------------------------------------


def from_cayley_table(raw, labels=None, name=None) -> FiniteGroup:
    """Build a group from a raw square table, validating every axiom."""
    try:
        table = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise GroupConstructionError(f"malformed table: {exc}") from None
    return FiniteGroup(table, labels=labels, name=name)


def enumerate_permutations(spec: PermutationSpec, max_order: int = DEFAULT_MAX_ORDER):
    """List the elements of the generated group in breadth-first order.

    Returns ``(perms, right)`` where ``perms[0]`` is the identity and
    ``right[k][x]`` is the index of ``perms[x] * spec.generators[k]``.
    """
    ident = tuple(range(spec.degree))
    gens = spec.generators
    index = {ident: 0}
    perms = [ident]
    right = [[] for _ in gens]
    x = 0
    while x < len(perms):
        p = perms[x]
        for k, g in enumerate(gens):
            q = tuple(g[i] for i in p)
            j = index.get(q)
            if j is None:
                if len(perms) >= max_order:
                    raise OrderLimitError(f"permutation group exceeds maximum order {max_order}")
                j = index[q] = len(perms)
                perms.append(q)
            right[k].append(j)
        x += 1
    return perms, right


def from_permutations(spec: PermutationSpec, max_order: int = DEFAULT_MAX_ORDER, name=None) -> FiniteGroup:
    perms, right = enumerate_permutations(spec, max_order)
    n = len(perms)
    # every element is a word in the generators; perms[y] = perms[parent[y]] * gen[via[y]]
    parent = [0] * n
    via = [0] * n
    seen = [False] * n
    seen[0] = True
    bfs = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for k, r in enumerate(right):
            y = r[x]
            if not seen[y]:
                seen[y] = True
                parent[y], via[y] = x, k
                bfs.append(y)
                queue.append(y)
    right_arr = [np.array(r, dtype=np.int64) for r in right]
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for y in bfs:
        # column y: x*y = (x*parent(y)) * gen
        table[:, y] = right_arr[via[y]][table[:, parent[y]]]
    labels = [cycle_notation(p) for p in perms]
    return FiniteGroup(table, labels=labels, name=name)


def cycle_notation(p: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def direct_product(G: FiniteGroup, H: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER, name=None) -> FiniteGroup:
    """Componentwise product; the pair ``(g, h)`` has index ``g*|H| + h``."""
    n, m = G.order, H.order
    if n * m > max_order:
        raise OrderLimitError(f"direct product of order {n * m} exceeds maximum order {max_order}")
    TG, TH = G.mul_table, H.mul_table
    table = (TG[:, None, :, None] * m + TH[None, :, None, :]).reshape(n * m, n * m)
    labels = [f"({G.label(g)}, {H.label(h)})" for g in range(n) for h in range(m)]
    return FiniteGroup(table, labels=labels, name=name)


def pair_index(H: FiniteGroup, g: int, h: int) -> int:
    """Index of ``(g, h)`` in ``direct_product(G, H)``."""
    return g * H.order + h
