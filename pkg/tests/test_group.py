import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_SPECS, group
from fitdef.errors import GroupConstructionError, NotASubgroupError, OrderLimitError
from fitdef.families import FamilyError, family, parse_family_spec
from fitdef.group import (
    FiniteGroup,
    PermutationSpec,
    center,
    centralizer,
    closure,
    conjugacy_class,
    cycle_notation,
    direct_product,
    enumerate_permutations,
    from_cayley_table,
    from_permutations,
    is_abelian,
    is_normal,
    normal_closure,
    pair_index,
    subgroup_from_members,
    trivial_subgroup,
    whole_group,
)

specs = st.sampled_from(SMALL_SPECS)


def test_family_orders():
    expected = {
        "cyclic:1": 1, "cyclic:12": 12, "dihedral:3": 6, "dihedral:8": 16, "symmetric:3": 6,
        "symmetric:4": 24, "symmetric:5": 120, "alternating:4": 12, "alternating:5": 60,
        "quaternion8": 8, "klein4": 4, "product(quaternion8,cyclic:3)": 24,
    }
    for spec, order in expected.items():
        assert parse_family_spec(spec).order == order


def test_symmetric_order_matches_factorial():
    for n in range(1, 6):
        assert family("symmetric", n).order == math.factorial(n)
        assert family("alternating", n).order == max(1, math.factorial(n) // 2)


def test_family_errors():
    with pytest.raises(FamilyError):
        family("dihedral", 2)
    with pytest.raises(FamilyError):
        family("nonsense", 3)
    with pytest.raises(FamilyError):
        family("symmetric", 8, max_order=5040)
    with pytest.raises(FamilyError):
        parse_family_spec("cyclic:")
    with pytest.raises(FamilyError):
        family("quaternion8", 2)


def test_permutation_table_agrees_with_composition():
    spec = PermutationSpec(4, ((1, 0, 2, 3), (1, 2, 3, 0)))
    perms, _ = enumerate_permutations(spec)
    G = from_permutations(spec)
    index = {p: i for i, p in enumerate(perms)}
    for a, p in enumerate(perms):
        for b, q in enumerate(perms):
            # left to right: apply p then q
            assert G.mul(a, b) == index[tuple(q[p[i]] for i in range(4))]


def test_permutation_limits_and_errors():
    with pytest.raises(GroupConstructionError):
        PermutationSpec(3, ((0, 0, 1),))
    with pytest.raises(OrderLimitError):
        from_permutations(PermutationSpec(5, ((1, 0, 2, 3, 4), (1, 2, 3, 4, 0))), max_order=100)


def test_cayley_validation():
    with pytest.raises(GroupConstructionError):
        from_cayley_table([[0, 1], [1, 1]])
    with pytest.raises(GroupConstructionError):
        from_cayley_table([[0, 1, 2], [1, 2, 0]])
    # a Latin square with identity that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupConstructionError):
        from_cayley_table(loop)


def test_cycle_notation():
    assert cycle_notation((0, 1, 2)) == "()"
    assert cycle_notation((1, 2, 0, 3)) == "(0 1 2)"
    assert cycle_notation((1, 0, 3, 2)) == "(0 1)(2 3)"


def test_quaternion_relations(Q8):
    i, j, k, m1 = (Q8.labels.index(s) for s in ("i", "j", "k", "-1"))
    assert Q8.mul(i, j) == k
    assert Q8.mul(i, i) == m1 and Q8.mul(j, j) == m1 and Q8.mul(k, k) == m1
    assert Q8.commutator(i, j) == m1


def test_element_basics(S3):
    e = S3.identity
    for g in S3.elements:
        assert S3.mul(e, g) == g == S3.mul(g, e)
        assert S3.mul(g, S3.inv(g)) == e
        assert S3.commutator(g, g) == e
        assert S3.conjugate(g, e) == g
        assert S3.power(g, S3.element_order(g)) == e
    assert sorted(S3.element_order(g) for g in S3.elements) == [1, 2, 2, 2, 3, 3]


def test_conjugacy_classes(S4):
    assert sorted(len(c) for c in S4.conjugacy_classes) == [1, 3, 6, 6, 8]
    for rep, cls in zip(S4.class_representatives, S4.conjugacy_classes):
        assert conjugacy_class(S4, rep) == frozenset(cls)
        for c, y in S4.conjugating_transversal(rep).items():
            assert S4.conjugate(rep, y) == c


def test_center_and_centralizer(S3, Q8):
    assert center(S3).is_trivial
    assert center(Q8).order == 2
    assert centralizer(S3, S3.identity) == whole_group(S3)
    A5 = group("alternating:5")
    assert sorted({centralizer(A5, g).order for g in A5.elements if g != A5.identity}) == [3, 4, 5]


def test_subgroup_construction(S4):
    assert closure(S4, []) == trivial_subgroup(S4)
    assert normal_closure(S4, [S4.identity]).is_trivial
    V4 = subgroup_from_members(S4, [g for g in S4.elements if S4.element_order(g) <= 2 and len(conjugacy_class(S4, g)) == 3] + [S4.identity])
    assert V4.order == 4 and is_normal(S4, V4) and is_abelian(V4)
    four_cycle = next(g for g in S4.elements if S4.element_order(g) == 4)
    with pytest.raises(NotASubgroupError):
        subgroup_from_members(S4, [S4.identity, four_cycle])


def test_direct_product_indexing():
    Q8, C3 = group("quaternion8"), group("cyclic:3")
    K = direct_product(Q8, C3)
    for a in range(8):
        for b in range(8):
            for x in range(3):
                for y in range(3):
                    assert K.mul(pair_index(C3, a, x), pair_index(C3, b, y)) == pair_index(C3, Q8.mul(a, b), C3.mul(x, y))


@given(specs, st.data())
def test_closure_idempotent_and_monotone(spec, data):
    G = group(spec)
    A = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    B = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    H = closure(G, A)
    assert closure(G, H.members) == H
    assert set(A) <= H.members
    assert H <= closure(G, A + B)
    assert G.order % H.order == 0


@given(specs)
def test_table_is_latin_square(spec):
    T = group(spec).mul_table
    n = T.shape[0]
    target = np.arange(n)
    assert all((np.sort(T, axis=0) == target[:, None]).all(axis=0))
    assert all((np.sort(T, axis=1) == target[None, :]).all(axis=1))


@given(specs, st.data())
def test_commutator_trivial_iff_commute(spec, data):
    G = group(spec)
    g, h = data.draw(st.tuples(st.integers(0, G.order - 1), st.integers(0, G.order - 1)))
    assert (G.commutator(g, h) == G.identity) == (G.mul(g, h) == G.mul(h, g))


@given(specs, st.data())
def test_normal_closure_is_smallest_normal(spec, data):
    G = group(spec)
    A = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    N = normal_closure(G, A)
    assert is_normal(G, N)
    conjugates = {G.conjugate(a, y) for a in A for y in G.elements}
    assert closure(G, conjugates) == N


def test_random_cayley_relabelling_roundtrip():
    G = group("dihedral:4")
    rng = np.random.default_rng(0)
    perm = np.concatenate([[0], 1 + rng.permutation(G.order - 1)])
    inv = np.argsort(perm)
    relabelled = perm[G.mul_table[inv][:, inv]]
    H = FiniteGroup(relabelled)
    assert H.identity == 0
    assert sorted(map(len, H.conjugacy_classes)) == sorted(map(len, G.conjugacy_classes))


def test_s3_brute_force_against_itertools():
    perms = list(permutations(range(3)))
    spec = PermutationSpec(3, tuple(perms))
    assert from_permutations(spec).order == 6
